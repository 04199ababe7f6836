import pytest

from mmw.context import CapExceededError, DegreeError, context, enumerate_E
from mmw.formula import render


def test_universe_sizes():
    assert context(3, 0).universe_size == 8
    assert context(1, 1).universe_size == 8
    assert context(2, 1).universe_size == 64
    assert context(3, 1).universe_size == 2048
    assert context(1, 2).universe_size == 512


def test_cap_refusal():
    with pytest.raises(CapExceededError):
        context(2, 2)
    with pytest.raises(CapExceededError):
        context(5, 1)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("MMW_UNIVERSE_CAP", "100")
    with pytest.raises(CapExceededError):
        context(3, 1)
    assert context(2, 1).universe_size == 64


def test_decode_examples():
    k11 = context(1, 1)
    assert k11.decode(7) == (1, (1, 1))
    assert k11.decode(0) == (0, (0, 0))
    k21 = context(2, 1)
    assert k21.decode(56) == (3, (0, 0, 0, 1))
    assert k21.encode(3, (0, 0, 0, 1)) == 56


def test_decode_requires_d1():
    with pytest.raises(DegreeError):
        context(2, 0).decode(1)
    with pytest.raises(DegreeError):
        context(1, 2).decode(1)


def test_decode_encode_roundtrip():
    ctx = context(2, 1)
    for idx in range(ctx.universe_size):
        s, eps = ctx.decode(idx)
        assert ctx.encode(s, eps) == idx


def test_chi():
    k11 = context(1, 1)
    assert k11.chi(7) == 2
    k21 = context(2, 1)
    assert k21.chi(56) == 1          # Ddd, first column
    assert k21.chi(63) == 4          # Dww3 column in section 3
    with pytest.raises(DegreeError):
        context(2, 0).chi(0)


def test_minterm_index_range_checked():
    with pytest.raises(ValueError):
        context(1, 1).decode(8)


def test_factor_labels():
    assert context(1, 1).factor_labels() == ["p", "<>p", "<>!p"]
    assert context(2, 1).factor_labels() == [
        "p", "q", "<>(pq)", "<>(p!q)", "<>(!pq)", "<>(!p!q)"]
    assert context(0, 1).factor_labels() == ["<>1"]


def test_minterm_formula_display_order():
    k11 = context(1, 1)
    assert render(k11.minterm_formula(7)) == "p<>p<>!p"
    assert render(k11.minterm_formula(2)) == "!p<>p!<>!p"


def test_enumerate_E_atoms():
    out = enumerate_E(1, 1, "all")
    assert sorted(m.members() for m in out) == [(0,), (1,)]


def test_enumerate_E_full_positive():
    out = enumerate_E(2, 4, "positive")
    assert len(out) == 1 and out[0].is_theorem_K()


def test_enumerate_E_positive_pairs():
    out = enumerate_E(2, 2, "positive")
    assert sorted(m.members() for m in out) == [(0, 3), (1, 3), (2, 3)]


def test_enumerate_E_sizes_sum():
    # sum over k of |E_v(k)| is the number of level-0 formulas
    for v in (1, 2, 3):
        n = 1 << v
        total = sum(len(enumerate_E(v, k, "all")) for k in range(n + 1))
        assert total == 1 << n


def test_enumerate_E_complement_duality():
    # complementing a negative k-formula gives a positive (n-k)-formula
    for v in (1, 2):
        n = 1 << v
        for k in range(n):
            neg = enumerate_E(v, k, "negative")
            pos = {m.members() for m in enumerate_E(v, n - k, "positive")}
            assert {(~m).members() for m in neg} == pos


def test_enumerate_E_range_error():
    with pytest.raises(ValueError):
        enumerate_E(1, 3, "all")
    with pytest.raises(ValueError):
        enumerate_E(1, 1, "bogus")
