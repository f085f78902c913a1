import random

import pytest
from hypothesis import given, settings, strategies as st

from conjstab.linalg import Flag, Matrix, Subspace
from conjstab.onepar import (
    GL, GROUP_KIND, LIE_KIND, SL, Cochar, GroupPoint, InvalidPointError, LambdaSampler,
    exp_nilpotent, flag_to_cochar, in_levi, in_parabolic, in_unipotent, lambda_sample,
    limit_conj, limit_tuple, mu, opposite, weight_decomp, weight_grid,
)

from helpers import random_invertible, random_nilpotent, random_point

WEIGHTS = st.lists(st.integers(-2, 2), min_size=2, max_size=3)


def _cochars(rng, n, count=8):
    out = []
    for _ in range(count):
        w = tuple(rng.randint(-2, 2) for _ in range(n))
        h = random_invertible(rng, n, -1, 1) if rng.random() < 0.5 else Matrix.identity(n)
        out.append(Cochar(w, h))
    return out


# -- examples -------------------------------------------------------------------

def test_upper_unipotent_contracts_to_identity():
    lam = Cochar.diagonal((1, -1))
    assert limit_conj(lam, Matrix([[1, 1], [0, 1]])) == Matrix.identity(2)


def test_lower_unipotent_has_no_limit():
    assert limit_conj(Cochar.diagonal((1, -1)), Matrix([[1, 0], [1, 1]])) is None


def test_trivial_cochar_fixes_everything():
    g = Matrix([[2, 5], [7, 1]])
    assert limit_conj(Cochar.diagonal((0, 0)), g) == g


def test_equal_weights_are_central():
    lam = Cochar.diagonal((3, 3, 3))
    assert lam.is_central and not lam.is_trivial


def test_block_limit_keeps_diagonal_blocks():
    lam = Cochar.diagonal((1, 1, 0))
    g = Matrix([[1, 2, 3], [4, 5, 6], [0, 0, 9]])
    assert limit_conj(lam, g) == Matrix([[1, 2, 0], [4, 5, 0], [0, 0, 9]])


def test_limit_tuple_rejects_unbalanced_sl_weights():
    x = GroupPoint(SL, LIE_KIND, (Matrix.identity(2),))
    with pytest.raises(ValueError):
        limit_tuple(Cochar.diagonal((1, 0)), x)


def test_mu_examples():
    lam = Cochar.diagonal((1, -1))
    assert mu(lam, Matrix([[0, 1], [0, 0]])) == 2
    assert mu(lam, Matrix([[0, 0], [1, 0]])) == -2
    assert mu(lam, Matrix([[1, 0], [0, 1]])) == 0
    with pytest.raises(ValueError):
        mu(lam, Matrix.zero(2))


def test_full_flag_gives_standard_cochar():
    e = [(1, 0, 0), (0, 1, 0)]
    flag = Flag((Subspace.span(e[:1], 3), Subspace.span(e, 3)))
    lam = flag_to_cochar(flag, GL)
    assert lam.conjugator == Matrix.identity(3)
    assert lam.weights == (2, 1, 0)


def test_line_in_sl2():
    lam = flag_to_cochar(Flag((Subspace.span([(1, 0)], 2),)), SL)
    assert lam.weights == (1, -1)


def test_skew_line_in_gl2():
    line = Subspace.span([(1, 1)], 2)
    lam = flag_to_cochar(Flag((line,)), GL)
    assert lam.weights == (1, 0)
    assert lam.conjugator.apply((1, 0)) == (1, 1)
    # a matrix with (1,1) as eigenvector has a limit
    g = Matrix([[2, 1], [1, 2]])
    assert limit_conj(lam, g) is not None
    assert limit_conj(lam, Matrix([[1, 1], [0, 1]])) is None


def test_identity_tuple_admits_every_sample():
    x = GroupPoint(GL, GROUP_KIND, (Matrix.identity(3), Matrix.identity(3)))
    sampler = LambdaSampler(x)
    assert len(sampler.sample(1)) == len(weight_grid(3, 1, GL)) * len(sampler.pool)


def test_scalar_lie_element_admits_every_sample():
    x = GroupPoint(SL, LIE_KIND, (Matrix.identity(2),))
    sampler = LambdaSampler(x)
    assert len(sampler.sample(2)) == len(weight_grid(2, 2, SL)) * len(sampler.pool)


def test_irreducible_pair_admits_only_central():
    x = GroupPoint(GL, GROUP_KIND, (Matrix([[1, 1], [0, 1]]), Matrix([[1, 0], [1, 1]])))
    assert all(lam.is_central for lam in lambda_sample(x, 2))


def test_weight_grid_sl_sums_to_zero():
    grid = weight_grid(3, 2, SL)
    assert all(sum(w) == 0 for w in grid)
    assert len(grid) == 19
    assert len(weight_grid(2, 2, GL)) == 25


def test_point_validation_codes():
    with pytest.raises(InvalidPointError) as e:
        GroupPoint(SL, GROUP_KIND, (Matrix.identity(2), Matrix.diag([1, 2])))
    assert e.value.code == "DET_NOT_ONE" and e.value.index == 1
    with pytest.raises(InvalidPointError) as e:
        GroupPoint(GL, GROUP_KIND, (Matrix([[1, 2], [2, 4]]),))
    assert e.value.code == "NOT_INVERTIBLE"
    with pytest.raises(InvalidPointError) as e:
        GroupPoint(GL, LIE_KIND, ())
    assert e.value.code == "EMPTY_TUPLE"


def test_exp_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        exp_nilpotent(Matrix.identity(2))


def test_exp_of_jordan_block():
    v = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    from fractions import Fraction
    assert exp_nilpotent(v) == Matrix([[1, 1, Fraction(1, 2)], [0, 1, 1], [0, 0, 1]])


# -- properties -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_limit_is_multiplicative(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    g1, g2 = random_invertible(rng, n), random_invertible(rng, n)
    for lam in _cochars(rng, n):
        a, b = limit_conj(lam, g1), limit_conj(lam, g2)
        if a is not None and b is not None:
            assert limit_conj(lam, g1 @ g2) == a @ b


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_levi_idempotence_and_membership(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    pat = rng.choice([lambda i, j: True, lambda i, j: i <= j])
    g = Matrix([[rng.randint(-2, 2) if pat(i, j) else 0 for j in range(n)] for i in range(n)])
    for lam in _cochars(rng, n):
        lim = limit_conj(lam, g)
        if lim is None:
            assert not in_parabolic(lam, g)
            continue
        assert limit_conj(lam, lim) == lim
        assert in_levi(lam, lim)
        back = limit_conj(opposite(lam), g)
        assert in_levi(lam, g) == (back is not None and back == lim)


def test_unipotent_membership():
    lam = Cochar.diagonal((2, 0, -1))
    u = Matrix([[1, 3, 4], [0, 1, 5], [0, 0, 1]])
    assert in_unipotent(lam, u)
    assert not in_unipotent(lam, Matrix.diag([2, 1, 1]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sample_of_concatenation_is_intersection(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    group = rng.choice([GL, SL])
    kind = rng.choice([GROUP_KIND, LIE_KIND])
    x = random_point(rng, n, rng.choice([1, 2]), group, kind)
    y = random_point(rng, n, rng.choice([1, 2]), group, kind)
    extra = [random_invertible(rng, n, -1, 1)]
    key = lambda lam: (lam.conjugator, lam.weights)
    sx = {key(l) for l in lambda_sample(x, 1, extra)}
    sy = {key(l) for l in lambda_sample(y, 1, extra)}
    sxy = {key(l) for l in lambda_sample(x.concat(y), 1, extra)}
    assert sxy == sx & sy


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_mu_lemma_and_reconstruction(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    v = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    if v.is_zero():
        return
    for lam in _cochars(rng, n):
        dec = weight_decomp(lam, v)
        assert dec.total(n, v.field) == v
        m = mu(lam, v)
        lim = limit_conj(lam, v)
        assert (m >= 0) == (lim is not None)
        if m == 0:
            assert not lim.is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_exp_equivalence_on_nilpotents(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    v = random_nilpotent(rng, n)
    for lam in _cochars(rng, n):
        assert (limit_conj(lam, v) is None) == (limit_conj(lam, exp_nilpotent(v)) is None)


@given(WEIGHTS)
def test_opposite_negates(w):
    lam = Cochar.diagonal(tuple(w))
    assert opposite(lam).weights == tuple(-k for k in w)
