import json

import pytest

from abelcone import canring as cr
from abelcone.cli import main
from abelcone.documents import dumps


@pytest.fixture
def write(tmp_path):
    def _write(name, x):
        path = tmp_path / f"{name}.json"
        path.write_text(x if isinstance(x, str) else dumps(x))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---- product ----

def test_product_of_nef_pair(capsys, write):
    x = write("x", cr.degree2(0, 4, 0, 0, 0, 1))
    y = write("y", cr.degree2(2, 0, 2, 0, 0, -1))
    assert run(capsys, "product", x, y)[:2] == (0, "-8\n")


def test_product_overflow_prints_zero(capsys, write):
    t = write("t", cr.theta1(1))
    code, out, err = run(capsys, "product", t, t)
    assert (code, out) == (0, "0\n")


def test_product_lambda_squared(capsys, write):
    l2 = write("l2", cr.mul(cr.lam(), cr.lam()))
    assert run(capsys, "product", l2, l2)[:2] == (0, "24\n")


def test_product_lower_degree_is_document(capsys, write):
    code, out, _ = run(capsys, "product", write("a", cr.theta1()), write("b", cr.lam()))
    assert code == 0 and json.loads(out)["coeffs"] == {"t1*l": "1"}


def test_product_float(capsys, write):
    x = write("x", cr.mu_t(1))
    assert run(capsys, "product", x, x, "--float")[1] == "56.0\n"


# ---- member ----

def test_member_nef(capsys, write):
    code, out, _ = run(capsys, "member", "nef", write("m", cr.mu_t("3/2")))
    assert code == 0 and out.startswith("Member")


def test_member_weak_refutation(capsys, write):
    code, out, _ = run(capsys, "member", "weak", write("m", cr.mu_t("11/10")), "--json", "--restarts", "16")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "NonMember" and doc["strength"] == "certified"
    assert doc["certificate"]["value"].startswith("-")


def test_member_semi_zero_class(capsys, write):
    z = write("z", '{"g": 2, "degree": 2, "coeffs": {}}')
    assert run(capsys, "member", "semi", z)[0] == 0


def test_member_sym2_unknown_on_tiny_grid(capsys, write):
    half = cr.theta_ab(1, "1/2")
    x = write("x", cr.mul(half, half))
    code, out, _ = run(capsys, "member", "sym2", x, "--grid=-1,0,1")
    assert code == 3 and out.startswith("Unknown")


def test_wrong_degree_is_usage_error(capsys, write):
    code, _, err = run(capsys, "member", "semi", write("t", cr.theta1()))
    assert code == 2 and "degree" in err


def test_parse_error_reports_position(capsys, write):
    bad = write("bad", '{"g": 2,\n "degree": 2,\n "coeffs": {"t1*t2": "1/0"}}')
    code, _, err = run(capsys, "member", "semi", bad)
    assert code == 2 and "line 3" in err


def test_exit_code_depends_only_on_verdict(capsys, write):
    codes = {run(capsys, "member", cone, write(f"x{cone}", cr.mu()))[0] for cone in ("semi", "nef")}
    assert codes == {1, 0}  # mu is nef but not semipositive


# ---- decompose ----

def test_decompose_certificate(capsys, write):
    code, out, _ = run(capsys, "decompose", write("x", cr.mul(cr.theta1(), cr.theta2())), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["certificate"]["kind"] == "Decomposition"


# ---- verify-paper ----

def test_verify_relations_g3(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "relations", "--g", "3")
    assert code == 0 and "l^6 = -720" in out


def test_verify_json_items_carry_claims(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "nef", "--json", "--seed", "3")
    rep = json.loads(out)
    assert code == 0 and rep["seed"] == 3 and all(item["claim"] for item in rep["items"])


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ABELCONE_SEED", "5")
    rep = json.loads(run(capsys, "verify-paper", "--only", "products", "--json")[1])
    assert rep["seed"] == 5


def test_bad_seed_environment(capsys, monkeypatch):
    monkeypatch.setenv("ABELCONE_SEED", "x")
    assert run(capsys, "verify-paper", "--only", "products")[0] == 2


def test_bad_g(capsys):
    assert run(capsys, "verify-paper", "--only", "relations", "--g", "9")[0] == 2


# ---- fourier-check and cm-witness ----

def test_fourier_check(capsys):
    code, out, _ = run(capsys, "fourier-check", "--n", "2", "--samples", "2")
    assert code == 0 and "n=2 k=2: 2/2" in out


def test_cm_witness_archived(capsys):
    code, out, _ = run(capsys, "cm-witness", "--archived", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["witness"]["pairing"] == "-4" and all(doc["checks"].values())


def test_cm_witness_search(capsys):
    code, out, _ = run(capsys, "cm-witness", "--n", "5", "--k", "3")
    assert code == 0 and "pairing=-" in out


def test_cm_witness_bad_range(capsys):
    assert run(capsys, "cm-witness", "--n", "4", "--k", "3")[0] == 2
