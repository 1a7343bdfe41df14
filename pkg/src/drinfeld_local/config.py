"""Problem descriptions in a sectioned key/value format.

Example::

    [field]
    p = 2
    n = 1
    q = 2

    [drinfeld]
    phi_t = pi + T

    [lattice]
    mode = drinfeld
    generators = ["pi^-1"]

List values are JSON arrays of strings.  ``ProblemConfig.dump`` writes a
canonical form that :func:`parse_config` reads back unchanged.
"""

from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, field

from .coeff_ring import CoeffRing
from .drinfeld import DrinfeldModule
from .errors import ParseError, PreconditionError
from .finite_field import GF
from .lattice import NormedLattice
from .local_field import LocalField

DEFAULT_CAP_DEGREE = 4
DEFAULT_CAP_EXT = 12
DEFAULT_CAP_ITERATIONS = 10 ** 5


@dataclass
class ProblemConfig:
    p: int = 2
    n: int = 1
    q: int | None = None
    modulus: list | None = None
    uniformizer: str = "pi"
    generator: str = "g"
    phi_t: str | None = None
    lattice_mode: str | None = None
    lattice_generators: list = field(default_factory=list)
    log_norms: list = field(default_factory=list)
    lattice_matrix: list | None = None
    heights: list = field(default_factory=list)
    as_break: list = field(default_factory=list)
    kummer_a: str | None = None
    kummer_lambda: str | None = None
    cap_degree: int = DEFAULT_CAP_DEGREE
    cap_ext: int = DEFAULT_CAP_EXT
    cap_iterations: int = DEFAULT_CAP_ITERATIONS
    source: str | None = field(default=None, compare=False, repr=False)

    # -- printing --

    def dump(self) -> str:
        out = ["[field]", f"p = {self.p}", f"n = {self.n}"]
        if self.q is not None:
            out.append(f"q = {self.q}")
        if self.modulus is not None:
            out.append(f"modulus = {json.dumps(self.modulus)}")
        out += [f"uniformizer = {self.uniformizer}", f"generator = {self.generator}", ""]
        if self.phi_t is not None:
            out += ["[drinfeld]", f"phi_t = {self.phi_t}", ""]
        if self.lattice_mode is not None:
            out += ["[lattice]", f"mode = {self.lattice_mode}"]
            if self.lattice_generators:
                out.append(f"generators = {json.dumps(self.lattice_generators)}")
            if self.log_norms:
                out.append(f"log_norms = {json.dumps(self.log_norms)}")
            if self.lattice_matrix is not None:
                out.append(f"matrix = {json.dumps(self.lattice_matrix)}")
            out.append("")
        if self.heights:
            out += ["[height]", f"elements = {json.dumps(self.heights)}", ""]
        if self.as_break:
            out += ["[as_break]", f"w = {json.dumps(self.as_break)}", ""]
        if self.kummer_a is not None or self.kummer_lambda is not None:
            out.append("[kummer]")
            if self.kummer_a is not None:
                out.append(f"a = {self.kummer_a}")
            if self.kummer_lambda is not None:
                out.append(f"lambda = {self.kummer_lambda}")
            out.append("")
        out += ["[caps]", f"degree = {self.cap_degree}", f"extension = {self.cap_ext}",
                f"iterations = {self.cap_iterations}", ""]
        return "\n".join(out)

    # -- building objects --

    def residue_field(self):
        return GF(self.p, self.n, self.modulus, self.generator)

    def local_field(self) -> LocalField:
        return LocalField(self.residue_field(), self.uniformizer)

    def ring(self) -> CoeffRing:
        return CoeffRing(self.residue_field(), self.q if self.q is not None else self.p)

    def module(self) -> DrinfeldModule:
        if self.phi_t is None:
            raise PreconditionError("the [drinfeld] section with phi_t is required")
        K = self.local_field()
        return self._parse("drinfeld", "phi_t", self.phi_t,
                           lambda s: DrinfeldModule.from_string(self.ring(), K, s))

    def element(self, section: str, key: str, text: str):
        return self._parse(section, key, text, self.local_field().parse)

    def lattice(self) -> NormedLattice:
        if self.lattice_mode == "drinfeld":
            D = self.module()
            gens = [self.element("lattice", "generators", g) for g in self.lattice_generators]
            return NormedLattice.drinfeld(D, gens)
        if self.lattice_mode == "abstract":
            A = self.ring()
            rows = None
            if self.lattice_matrix is not None:
                rows = [[self._parse("lattice", "matrix", x, A.parse) for x in row] for row in self.lattice_matrix]
            return NormedLattice.abstract(A, self.log_norms, rows)
        raise PreconditionError("[lattice] mode must be 'drinfeld' or 'abstract'")

    def _parse(self, section, key, text, fn):
        try:
            return fn(text)
        except ParseError as exc:
            line = _locate(self.source, section, key) if self.source else None
            where = f"[{section}] {key}" + (f" (line {line})" if line else "")
            raise ParseError(f"{where}: {exc.message}", exc.text, exc.column) from None


def _locate(text: str, section: str, key: str) -> int | None:
    current = None
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
        elif current == section and line.split("=", 1)[0].strip() == key:
            return i
    return None


def _list(value: str, where: str) -> list:
    value = value.strip()
    if value.startswith("["):
        try:
            data = json.loads(value)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{where}: bad list ({exc.msg})", value, exc.colno) from None
        return data
    return [x.strip() for x in value.split(",") if x.strip()]


def _str(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    return value


def _int(sec, key, default=None, positive=False):
    if key not in sec:
        return default
    raw = _str(sec[key])
    try:
        v = int(raw)
    except ValueError:
        raise ParseError(f"[{sec.name}] {key}: expected an integer, got {raw!r}") from None
    if positive and v < 1:
        raise ParseError(f"[{sec.name}] {key}: must be positive")
    return v


def parse_config(text: str) -> ProblemConfig:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"malformed config: {exc}") from None
    if "field" not in cp:
        raise ParseError("missing [field] section")
    f = cp["field"]
    cfg = ProblemConfig(source=text)
    cfg.p = _int(f, "p", 2)
    cfg.n = _int(f, "n", 1, positive=True)
    cfg.q = _int(f, "q")
    if "modulus" in f:
        cfg.modulus = [int(x) for x in _list(f["modulus"], "[field] modulus")]
    cfg.uniformizer = _str(f.get("uniformizer", "pi"))
    cfg.generator = _str(f.get("generator", "g"))
    if "drinfeld" in cp and "phi_t" in cp["drinfeld"]:
        cfg.phi_t = _str(cp["drinfeld"]["phi_t"])
    if "lattice" in cp:
        sec = cp["lattice"]
        cfg.lattice_mode = _str(sec.get("mode", "drinfeld"))
        if "generators" in sec:
            cfg.lattice_generators = [str(x) for x in _list(sec["generators"], "[lattice] generators")]
        if "log_norms" in sec:
            cfg.log_norms = [str(x) for x in _list(sec["log_norms"], "[lattice] log_norms")]
        if "matrix" in sec:
            cfg.lattice_matrix = [[str(x) for x in row] for row in _list(sec["matrix"], "[lattice] matrix")]
    if "height" in cp and "elements" in cp["height"]:
        cfg.heights = [str(x) for x in _list(cp["height"]["elements"], "[height] elements")]
    if "as_break" in cp and "w" in cp["as_break"]:
        cfg.as_break = [str(x) for x in _list(cp["as_break"]["w"], "[as_break] w")]
    if "kummer" in cp:
        sec = cp["kummer"]
        cfg.kummer_a = _str(sec["a"]) if "a" in sec else None
        cfg.kummer_lambda = _str(sec["lambda"]) if "lambda" in sec else None
    if "caps" in cp:
        sec = cp["caps"]
        cfg.cap_degree = _int(sec, "degree", DEFAULT_CAP_DEGREE, positive=True)
        cfg.cap_ext = _int(sec, "extension", DEFAULT_CAP_EXT, positive=True)
        cfg.cap_iterations = _int(sec, "iterations", DEFAULT_CAP_ITERATIONS, positive=True)
    return cfg
