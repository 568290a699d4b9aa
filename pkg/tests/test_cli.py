import io
import json

import pytest

from koornwinder_asep.cli import EXIT_DEGENERATE, EXIT_FAIL, EXIT_OK, EXIT_USAGE, run

PARAMS = "a=1/2,b=1/3,c=1/5,d=1/7,q=1/4"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_zn_zero():
    code, out, _ = call("zn", "--N", "0", "--params", PARAMS)
    assert code == EXIT_OK
    assert json.loads(out)["Z"]["coeffs"] == ["1"]


def test_zn_tasep_value():
    code, out, _ = call("zn", "--N", "2", "--params", "a=0,b=0,c=0,d=0,q=0", "--xi", "1")
    assert code == EXIT_OK and json.loads(out) == {"Z": "5"}


def test_zn_from_rates_matches_params():
    _, a, _ = call("zn", "--N", "2", "--rates", "alpha=1,beta=1,gamma=0,delta=0,q=0", "--xi", "1")
    assert json.loads(a) == {"Z": "5"}


def test_hook_single_box():
    code, out, _ = call("hook", "--partition", "1", "--rates",
                        "alpha=1/2,beta=1/2,gamma=1/8,delta=1/8")
    d = json.loads(out)
    assert code == EXIT_OK and d["K"] == "16/3" and d["S"] == "5/3" and d["x"] == "16/5"


def test_stationary_output():
    code, out, _ = call("stationary", "--N", "1", "--r", "0", "--rates",
                        "alpha=1/2,beta=1/3,gamma=1/5,delta=1/7,q=1/4")
    assert code == EXIT_OK
    assert json.loads(out)["stationary"] == {"0": "112/247", "2": "135/247"}


def test_simulate_is_deterministic():
    argv = ("simulate", "--N", "2", "--r", "1", "--rates",
            "alpha=1/2,beta=1/3,gamma=1/5,delta=1/7,q=1/4", "--steps", "20000", "--seed", "3")
    assert call(*argv)[1] == call(*argv)[1]


def test_koornwinder_and_z2():
    code, out, _ = call("koornwinder", "--partition", "2,1", "--params", PARAMS)
    assert code == EXIT_OK and json.loads(out)["partition"] == [2, 1]
    code, out, _ = call("z2", "--N", "3", "--r", "3", "--params", PARAMS)
    assert json.loads(out)["Z"]["coeffs"] == ["1"]


def test_ansatz_weights_command():
    code, out, _ = call("ansatz-weights", "--N", "2", "--r", "1", "--params", PARAMS)
    assert code == EXIT_OK and set(json.loads(out)["weights"]) == {"01", "10", "12", "21"}


def test_paths_csv():
    code, out, _ = call("paths", "--N", "3", "--r", "1", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0] == "key,value"


def test_usage_errors():
    assert call("zn", "--N", "2")[0] == EXIT_USAGE
    assert call("zn", "--N", "2", "--params", PARAMS, "--rates", "alpha=1")[0] == EXIT_USAGE
    assert call("nonsense")[0] == EXIT_USAGE
    assert call("koornwinder", "--partition", "1,2", "--params", PARAMS)[0] == EXIT_USAGE
    assert call("zn", "--N", "1", "--params", "a=x,b=0,c=0,d=0,q=0")[0] == EXIT_USAGE


def test_degenerate_parameters():
    code, _, err = call("zn", "--N", "2", "--params", "a=1,b=1/3,c=-1,d=1/7,q=1/4")
    assert code == EXIT_DEGENERATE and "1+ac+a+c" in err


def test_verify_passing_suite():
    code, out, _ = call("verify", "relations", "--points", "2", "--seed", "7")
    assert code == EXIT_OK and "FAIL" not in out


def test_verify_main_theorem_reports_scaled_form():
    code, out, _ = call("verify", "main-theorem", "--N", "3", "--points", "1", "--seed", "7",
                        "--format", "json")
    d = json.loads(out)
    assert code == EXIT_FAIL and not d["ok"]
    assert all(not n["scaled_form_holds"] and n["unscaled_holds"] for n in d["notes"])


def test_verify_is_deterministic():
    argv = ("verify", "jacobi-trudi", "--points", "1", "--seed", "3", "--bounds", "box=2,length=2")
    assert call(*argv)[1] == call(*argv)[1]
