from hopf_verifier import rmatrix as rm
from hopf_verifier.hopf import flip


def test_classical_limit():
    assert rm.r_classical_limit(4)


def test_inverse_and_triangularity():
    assert rm.check_inverse(5)
    assert rm.check_triangularity(5)


def test_intertwining_all_generators():
    rep = rm.check_intertwining(3)
    assert rep and len(rep) == 10


def test_qybe():
    assert rm.check_qybe(3)
    rep = rm.check_qybe(0)
    assert rep and len(rep) == 1


def test_first_factor_expansion_has_no_rewriting():
    R = rm.UniversalR(3)
    f = R.factor((2, "E2", "P2"))
    assert len(f.terms) == 4   # n = 0..3


def test_export_lines(tmp_path):
    R = rm.build_universal_R(2)
    text = R.export(tmp_path / "R.txt")
    assert text.splitlines()[0].count("@") == 1
    assert (tmp_path / "R.txt").read_text() == text


def test_flipped_sign_is_detected(monkeypatch):
    bad = rm.FACTORS[:-1] + ((2, "P2", "E2"),)
    monkeypatch.setattr(rm, "FACTORS", bad)
    assert not rm.check_qybe(2)
    assert not rm.check_triangularity(2)
    assert not rm.check_intertwining(2, generators=("K3", "F1"))


def test_r_matrix_flip_is_inverse_up_to_order():
    R = rm.UniversalR(3)
    assert (R.inverse - flip(R.expanded)).is_zero()
