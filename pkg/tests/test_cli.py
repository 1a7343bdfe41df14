import json

import pytest
from hypothesis import given, strategies as st

from drinfeld_local.cli import main
from drinfeld_local.config import ProblemConfig, parse_config
from drinfeld_local.errors import ParseError

BASE = """[field]
p = 2
n = 1

[drinfeld]
phi_t = pi + T

[lattice]
mode = drinfeld
generators = ["pi^-1"]
"""


def run(capsys, tmp_path, text, *args):
    cfg = tmp_path / "problem.ini"
    cfg.write_text(text)
    code = main([args[0], "--config", str(cfg), *args[1:]])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


def test_height(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, BASE + '\n[height]\nelements = ["pi^-2 + 1"]\n', "height")
    assert code == 0 and out["height"] == 2


def test_conductor(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, BASE, "conductor")
    assert code == 0
    assert (out["exact"], out["vol_log_q"], out["volume_bound"]) == (1, "-1", 1)


def test_as_break(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, '[field]\np = 2\n[as_break]\nw = ["pi^-4"]\n', "as-break")
    assert code == 0 and out["break"] == 1 and out["kind"] == "ramified"


def test_volume_and_reduce_abstract(capsys, tmp_path):
    text = '[field]\np = 2\n[lattice]\nmode = abstract\nlog_norms = ["0", "0"]\n'
    code, out, _ = run(capsys, tmp_path, text, "volume")
    assert code == 0 and out["vol_log_q"] == "-2" and out["vol"] == "1/4" and out["agree"]
    assert out["ball_generates"] is True
    code, out, _ = run(capsys, tmp_path, text, "reduce")
    assert code == 0 and out["successive_minima_log_q"] == ["0", "0"]


def test_kummer(capsys, tmp_path):
    text = '[field]\np = 2\n[drinfeld]\nphi_t = 1 + T\n[kummer]\na = t\nlambda = pi^-3\n'
    code, out, _ = run(capsys, tmp_path, text, "kummer")
    assert code == 0 and out["image"]["outcome"] == "SurjectiveOnInertia"
    assert out["break"]["break"] == 3


def test_output_is_deterministic(capsys, tmp_path):
    first = run(capsys, tmp_path, BASE, "conductor", "--json")
    second = run(capsys, tmp_path, BASE, "conductor", "--json")
    assert first == second


def test_parse_error_exit_code_and_column(capsys, tmp_path):
    code, _, err = run(capsys, tmp_path, BASE.replace("pi + T", "pi + + T"), "conductor")
    assert code == 2 and err["error"] == "parse"
    assert "column" in err["message"] and "[drinfeld] phi_t" in err["message"]


def test_missing_config_is_a_parse_error(capsys):
    assert main(["height"]) == 2
    capsys.readouterr()


def test_computation_error_exit_code(capsys, tmp_path):
    text = BASE.replace("pi + T", "1 + pi^-1*T")
    code, _, err = run(capsys, tmp_path, text, "conductor")
    assert code == 1 and err["error"] == "precondition"


def test_verify_exit_codes(capsys, monkeypatch):
    assert main(["verify", "--suite", "asbreak", "--cases", "20", "--seed", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] and out["seed"] == 3
    assert main(["verify", "--suite", "nope"]) == 2
    capsys.readouterr()
    from drinfeld_local import verify

    def failing(seed=0, cases=0):
        res = verify.SuiteResult("broken")
        res.fail(reason="forced")
        return res
    monkeypatch.setitem(verify.SUITES, "asbreak", failing)
    assert main(["verify", "--suite", "asbreak"]) == 3
    capsys.readouterr()


def test_bad_caps_rejected(capsys):
    assert main(["verify", "--suite", "asbreak", "--cases", "0"]) == 2
    capsys.readouterr()


def test_config_roundtrip_example():
    cfg = parse_config(BASE + '\n[kummer]\na = t^2 + 1\nlambda = pi^-3\n[caps]\nextension = 8\n')
    assert cfg.kummer_a == "t^2 + 1" and cfg.cap_ext == 8
    assert parse_config(cfg.dump()) == cfg


def test_config_errors():
    with pytest.raises(ParseError):
        parse_config("[drinfeld]\nphi_t = T\n")
    with pytest.raises(ParseError):
        parse_config("[field]\np = two\n")
    with pytest.raises(ParseError):
        parse_config("[field]\np = 2\n[lattice]\ngenerators = [\"pi\"\n")


names = st.sampled_from(["pi^-1", "pi^-3 + 1", "1 + pi", "pi^-2 + pi^-1"])


@given(st.sampled_from([2, 3]), st.integers(1, 3), st.lists(names, max_size=3), st.lists(names, max_size=2),
       st.booleans(), st.integers(1, 20))
def test_config_dump_parse_roundtrip(p, n, gens, hs, with_phi, cap):
    cfg = ProblemConfig(p=p, n=n, lattice_mode="drinfeld" if gens else None, lattice_generators=gens,
                        heights=hs, phi_t="pi + T" if with_phi else None, cap_ext=cap)
    assert parse_config(cfg.dump()) == cfg
