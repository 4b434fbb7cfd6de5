import pytest

from cliffsemi import (EmptyDualError, InvalidPencilError, Pencil,
                       ScrollType, canonical_exponents, canonical_model_text,
                       clifford_of_curve, enumerate_semigroups, from_gaps,
                       from_generators, gonality, make_sheaf, nonplanar_family,
                       pencil_matrix, realizing_curve_exponents, scroll_type)


def _non_gorenstein_curve():
    return from_gaps([1, 2, 4, 5, 7, 8, 11])


def _check_pencil(F, u, v):
    p = Pencil(F, u, v)
    scroll = scroll_type(p)
    inv = F.invariants
    assert scroll.degree_e == inv.h1
    assert scroll.dim == inv.scrollar_dim
    assert scroll.ambient == F.base.genus - 1
    coords = canonical_exponents(F.base)
    matrix = pencil_matrix(p)
    assert matrix.entries.shape == (2, inv.h1)
    for r, shift in enumerate((p.u, p.v)):
        for j, c in enumerate(matrix.columns):
            assert coords[matrix.entries[r, j]] == c + shift
    return scroll


def _check_all_pencils(F):
    for u, v in F.pencils():
        _check_pencil(F, u, v)


# ------------------------------------------------------------ canonical model
def test_canonical_exponents():
    assert canonical_exponents(from_generators([5, 6])) == \
        [0, 5, 6, 10, 11, 12, 15, 16, 17, 18]
    assert canonical_exponents(_non_gorenstein_curve()) == \
        [0, 3, 4, 6, 7, 9, 10]
    assert canonical_exponents(from_generators([2, 3])) == [0]
    assert canonical_model_text(from_generators([5, 6])) == \
        '(1:t^5:t^6:t^10:t^11:t^12:t^15:t^16:t^17:t^18)'


def test_realizing_curve_exponents():
    assert realizing_curve_exponents(from_generators([5, 9, 13, 17, 21])) == \
        [5, 9, 13, 17, 21, 22]
    assert realizing_curve_exponents(from_generators([6, 8, 9])) == [6, 8, 9]
    assert realizing_curve_exponents(from_generators([5, 6])) == [5, 6]
    assert realizing_curve_exponents(from_generators([3, 7])) == \
        [3, 7, 12, 13]


def test_realizing_exponents_generate_semigroup():
    for S in enumerate_semigroups(7):
        if S.is_smooth:
            continue
        exps = realizing_curve_exponents(S)
        assert exps[-1] - exps[-2] == 1
        assert exps == sorted(set(exps))
        assert from_generators(exps) == S


# ------------------------------------------------------------ first curve
def test_first_curve_pencil_0_5():
    F = make_sheaf(from_generators([5, 6]), [4, 5, 6])
    p = Pencil(F, 0, 5)
    assert p.is_standard
    assert pencil_matrix(p).to_list() == [[2, 4, 5], [4, 7, 8]]
    assert pencil_matrix(p).render() == '[[x2,x4,x5],[x4,x7,x8]]'
    scroll = scroll_type(p)
    assert scroll.invariants == (2, 1, 0, 0, 0, 0, 0)
    assert scroll.dim == 7
    assert scroll.render() == 'S(2,1,0,0,0,0,0) in P^9'
    assert not scroll.is_smooth


def test_first_curve_pencil_4_6():
    F = make_sheaf(from_generators([5, 6]), [4, 5, 6])
    p = Pencil(F, 6, 4)
    assert (p.u, p.v, p.step) == (4, 6, 2)
    assert not p.is_standard
    assert pencil_matrix(p).to_list() == [[3, 6, 7], [5, 8, 9]]
    assert scroll_type(p).invariants == (1, 1, 1, 0, 0, 0, 0)


# ----------------------------------------------------------- second curve
def test_second_curve_pencil_0_4():
    F = make_sheaf(_non_gorenstein_curve(), [3, 4, 6])
    p = Pencil(F, 0, 4)
    assert pencil_matrix(p).render() == '[[x0,x1],[x2,x4]]'
    scroll = scroll_type(p)
    assert scroll.invariants == (1, 1, 0, 0, 0)
    assert scroll.ambient == 6


def test_second_curve_pencil_3_6():
    F = make_sheaf(_non_gorenstein_curve(), [3, 4, 6])
    p = Pencil(F, 3, 6)
    assert p.is_standard
    assert pencil_matrix(p).to_list() == [[1, 3], [3, 5]]
    assert scroll_type(p).invariants == (2, 0, 0, 0, 0)


# ----------------------------------------------------------------- errors
def test_invalid_pencils():
    F = make_sheaf(from_generators([5, 6]), [4, 5, 6])
    with pytest.raises(InvalidPencilError):
        Pencil(F, 5, 5)
    with pytest.raises(InvalidPencilError):
        Pencil(F, 0, 3)
    with pytest.raises(InvalidPencilError):
        Pencil(F, 0, 7)


def test_empty_dual():
    S = from_generators([4, 7])
    F = make_sheaf(S, [S.frobenius + 1])
    with pytest.raises(EmptyDualError):
        pencil_matrix(Pencil(F, 0, S.frobenius + 1))


def test_scroll_type_fields():
    scroll = ScrollType((3, 2, 1))
    assert (scroll.dim, scroll.degree_e, scroll.ambient) == (3, 6, 8)
    assert scroll.is_smooth
    assert scroll.to_dict() == {
        'invariants': [3, 2, 1],
        'dim': 3,
        'degree': 6,
        'ambient': 8,
        'smooth': True,
        'text': 'S(3,2,1) in P^8',
    }


# ------------------------------------------------------------- consistency
def test_known_sheaves_all_pencils():
    _check_all_pencils(make_sheaf(from_generators([5, 6]), [4, 5, 6]))
    _check_all_pencils(make_sheaf(_non_gorenstein_curve(), [3, 4, 6]))
    _check_all_pencils(make_sheaf(from_generators([5, 9, 13, 17, 21]),
                                  [4, 5]))
    _check_all_pencils(make_sheaf(from_generators([6, 8, 9]), [6, 8, 9]))


@pytest.mark.parametrize('gens', [
    [5, 9, 13, 17, 21], [6, 8, 9], [4, 5], [5, 6], [6, 7], [7, 8], [8, 9],
    [9, 10], [4, 7, 10, 13],
])
def test_computing_sheaves_all_pencils(gens):
    S = from_generators(gens)
    for F in clifford_of_curve(S).computing_sheaves:
        _check_all_pencils(F)


@pytest.mark.parametrize('alpha', [5, 6, 7])
def test_nonplanar_computing_sheaves_all_pencils(alpha):
    S, _ = nonplanar_family(alpha)
    for F in clifford_of_curve(S).computing_sheaves:
        _check_all_pencils(F)


def test_gonality_pencils():
    for gens in ([6, 8, 9], [5, 9, 13, 17, 21], [5, 6]):
        S = from_generators(gens)
        gon, witnesses = gonality(S)
        for a in witnesses:
            scroll = _check_pencil(make_sheaf(S, [a]), 0, a)
            assert scroll.dim == gon - 1


def test_scroll_dimension_is_pencil_independent():
    for S in enumerate_semigroups(7):
        if S.genus < 4:
            continue
        for F in clifford_of_curve(S).computing_sheaves:
            dims = {scroll_type(Pencil(F, u, v)).dim for u, v in F.pencils()}
            assert dims == {F.invariants.scrollar_dim}
