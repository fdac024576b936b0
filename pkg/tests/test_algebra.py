from fractions import Fraction
from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import multivectors, signatures
from oracles import MATRIX_REPS, to_matrix, word_product
from hodgephase.algebra import (
    EXACT,
    CoefficientMode,
    Multivector,
    Signature,
    blade_indices,
    blade_product,
    dot,
    geometric_inverse,
    geometric_product,
    grade_project,
    hodge_dual,
    inner,
    inverse,
    reversion,
    wedge,
)
from hodgephase.errors import GradeOutOfRange, NotABlade, NullBlade, SignatureMismatch


# --- signature -----------------------------------------------------------------------


def test_signature_metric_and_flags():
    assert Signature(3, 1).metric == (1, 1, 1, -1)
    assert Signature(3, 1, negative_first=True).metric == (-1, 1, 1, 1)
    assert Signature(4).euclidean() and not Signature(3, 1).euclidean()
    assert Signature(2, 3).n == 5
    assert Signature.parse("3,1") == Signature(3, 1)
    assert Signature.parse("5") == Signature(5, 0)


@pytest.mark.parametrize("p,q", [(0, 0), (13, 0), (7, 6), (-1, 2)])
def test_signature_rejects_bad_dimensions(p, q):
    with pytest.raises(ValueError):
        Signature(p, q)


@pytest.mark.parametrize("n", range(1, 9))
def test_grade_counts(n):
    sig = Signature(n)
    for k in range(n + 1):
        assert len(sig.basis(k)) == comb(n, k)
    assert len(sig.basis()) == 2 ** n


# --- blade_product ---------------------------------------------------------------------


def test_blade_product_examples():
    cl3, cl4 = Signature(3), Signature(4)
    assert blade_product(0b001, 0b001, cl3) == (0, 1)
    assert blade_product(0b011, 0b010, cl3) == (0b001, 1)
    assert blade_product(0b1111, 0b0001, cl4) == (0b1110, -1)
    assert blade_product(0b0001, 0b1111, cl4) == (0b1110, 1)


@pytest.mark.parametrize("sig", [Signature(4), Signature(2, 3), Signature(3, 2, negative_first=True), Signature(1, 4)])
def test_blade_product_matches_word_reduction(sig):
    for a, b in product(range(sig.size), repeat=2):
        assert blade_product(a, b, sig) == word_product(blade_indices(a), blade_indices(b), sig.metric)


@given(st.integers(0, 2**11 - 1), st.integers(0, 2**11 - 1), st.integers(0, 11))
def test_blade_product_untabled_dimension_matches_oracle(a, b, q):
    sig = Signature(11 - q, q)
    assert blade_product(a, b, sig) == word_product(blade_indices(a), blade_indices(b), sig.metric)


@given(st.data())
@settings(max_examples=200)
def test_table_and_on_the_fly_agree(data):
    # n = 8 uses the cached table, n = 9 recomputes; the embedding must agree
    a, b = data.draw(st.integers(0, 255)), data.draw(st.integers(0, 255))
    assert blade_product(a, b, Signature(8)) == blade_product(a, b, Signature(9))


# --- geometric product ---------------------------------------------------------------------


def test_geometric_product_examples():
    cl2, cl4 = Signature(2), Signature(4)
    one_plus = cl2.scalar() + cl2.e(1)
    one_minus = cl2.scalar() - cl2.e(1)
    assert one_plus * one_minus == 0
    assert cl2.pseudoscalar() * cl2.pseudoscalar() == -1
    assert cl4.e(1, 2) * cl4.e(3, 4) == cl4.pseudoscalar()


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        geometric_product(Signature(3).e(1), Signature(4).e(1))
    with pytest.raises(SignatureMismatch):
        Signature(3).e(1) + Signature(2, 1).e(1)


@pytest.mark.parametrize("sig", list(MATRIX_REPS))
@given(data=st.data())
@settings(max_examples=60)
def test_geometric_product_matches_matrix_representation(sig, data):
    a = data.draw(multivectors(sig))
    b = data.draw(multivectors(sig))
    assert np.allclose(to_matrix(a * b), to_matrix(a) @ to_matrix(b))


@pytest.mark.parametrize("sig", list(MATRIX_REPS))
def test_matrix_representation_is_faithful(sig):
    mats = [to_matrix(sig.blade(m)).ravel() for m in range(sig.size)]
    stacked = np.array(mats)
    assert np.linalg.matrix_rank(np.hstack([stacked.real, stacked.imag])) == sig.size


@given(signatures(max_n=5), st.data())
@settings(max_examples=80)
def test_associativity_exact(sig, data):
    a, b, c = (data.draw(multivectors(sig)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(signatures(max_n=5), st.data())
@settings(max_examples=60)
def test_distributivity(sig, data):
    a, b, c = (data.draw(multivectors(sig)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (b + c) * a == b * a + c * a


@pytest.mark.parametrize("sig", [Signature(3), Signature(3, 1), Signature(2, 2, negative_first=True), Signature(0, 3)])
def test_clifford_relation(sig):
    for i, j in product(range(1, sig.n + 1), repeat=2):
        ei, ej = sig.e(i), sig.e(j)
        assert ei * ej + ej * ei == 2 * sig.g(i, j)


def test_scalar_unit_is_identity(cl4):
    for m in range(cl4.size):
        b = cl4.blade(m, Fraction(3, 2))
        assert cl4.scalar() * b == b == b * cl4.scalar()


# --- grade, dot, wedge --------------------------------------------------------------------


def test_grade_project_examples(cl3):
    a = 1 + 2 * cl3.e(1) + 3 * cl3.e(1, 2)
    assert grade_project(a, 1) == 2 * cl3.e(1)
    assert grade_project(cl3.e(1, 2), 0) == 0
    with pytest.raises(GradeOutOfRange):
        grade_project(a, 4)
    with pytest.raises(GradeOutOfRange):
        grade_project(a, -1)


@given(st.data())
def test_grade_completeness(data):
    sig = Signature(4)
    a = data.draw(multivectors(sig, max_terms=10))
    total = Multivector.zero(sig)
    for k in range(sig.n + 1):
        part = grade_project(a, k)
        assert part.grades() <= {k}
        assert len(part) <= comb(sig.n, k)
        total = total + part
    assert total == a


def test_dot_and_wedge_examples(cl3):
    assert wedge(cl3.e(1), cl3.e(2)) == cl3.e(1, 2)
    assert wedge(cl3.e(1), cl3.e(1)) == 0
    assert dot(cl3.e(1, 2), cl3.e(2)) == cl3.e(1)
    assert wedge(cl3.e(2), cl3.e(1)) == -cl3.e(1, 2)
    assert dot(cl3.scalar(2), cl3.e(2, 3)) == 2 * cl3.e(2, 3)
    assert wedge(cl3.e(1, 2), cl3.e(2, 3)) == 0


@pytest.mark.parametrize("sig", [Signature(4), Signature(3, 1)])
def test_dot_and_wedge_are_grade_parts_of_product(sig):
    for ma, mb in product(range(sig.size), repeat=2):
        a, b = sig.blade(ma), sig.blade(mb)
        i, j = ma.bit_count(), mb.bit_count()
        ab = a * b
        assert dot(a, b) == grade_project(ab, abs(i - j))
        want = grade_project(ab, i + j) if i + j <= sig.n else Multivector.zero(sig)
        assert wedge(a, b) == want


@given(st.data())
def test_dot_wedge_bilinear_over_grades(data):
    sig = Signature(4)
    a, b = data.draw(multivectors(sig)), data.draw(multivectors(sig))
    wsum = Multivector.zero(sig)
    dsum = Multivector.zero(sig)
    for i, j in product(range(5), repeat=2):
        ai, bj = grade_project(a, i), grade_project(b, j)
        wsum = wsum + (grade_project(ai * bj, i + j) if i + j <= 4 else 0)
        dsum = dsum + grade_project(ai * bj, abs(i - j))
    assert wedge(a, b) == wsum
    assert dot(a, b) == dsum


@given(st.data())
def test_wedge_associative(data):
    sig = Signature(5)
    a, b, c = (data.draw(multivectors(sig)) for _ in range(3))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


# --- reversion, inner product, inverse, duals ------------------------------------------


def test_reversion_examples(cl3):
    assert reversion(cl3.e(1, 2)) == -cl3.e(1, 2)
    assert reversion(cl3.e(1, 2, 3)) == -cl3.e(1, 2, 3)
    assert reversion(cl3.e(2)) == cl3.e(2)
    assert reversion(cl3.scalar(5)) == 5
    assert ~cl3.e(2, 1) == cl3.e(1, 2)


@pytest.mark.parametrize("sig", [Signature(5), Signature(2, 2)])
def test_reversion_matches_reversed_word(sig):
    for m in range(sig.size):
        idx = blade_indices(m)
        assert reversion(sig.blade(m)) == sig.e(*reversed(idx))


@given(signatures(max_n=4), st.data())
@settings(max_examples=60)
def test_reversion_anti_automorphism(sig, data):
    a, b = data.draw(multivectors(sig)), data.draw(multivectors(sig))
    assert reversion(a * b) == reversion(b) * reversion(a)
    assert reversion(reversion(a)) == a


def test_inner_examples(cl3):
    assert inner(cl3.e(1, 2), cl3.e(1, 2)) == 1
    assert inner(cl3.e(1), cl3.e(2)) == 0
    assert inner(cl3.e(1), cl3.e(1, 2)) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_inner_positive_definite_on_euclidean_blades(n):
    sig = Signature(n)
    for m in range(sig.size):
        assert inner(sig.blade(m), sig.blade(m)) == 1
    for ma, mb in product(range(sig.size), repeat=2):
        if ma != mb:
            assert inner(sig.blade(ma), sig.blade(mb)) == 0


@given(st.data())
def test_inner_positive_on_homogeneous_euclidean(data):
    sig = Signature(5)
    k = data.draw(st.integers(0, 5))
    a = grade_project(data.draw(multivectors(sig, max_terms=12)), k)
    if a:
        assert inner(a, a) > 0
    b = grade_project(data.draw(multivectors(sig, max_terms=12)), k)
    assert inner(a, b) == inner(b, a)


def test_inner_in_mixed_signature():
    sig = Signature(3, 1)
    assert inner(sig.e(4), sig.e(4)) == -1
    assert inner(sig.e(1, 4), sig.e(1, 4)) == -1


def test_hodge_dual_examples(cl3):
    assert hodge_dual(cl3.e(1)) == cl3.e(2, 3)
    assert hodge_dual(cl3.scalar()) == cl3.pseudoscalar()
    assert hodge_dual(cl3.pseudoscalar()) == 1
    for n in range(1, 7):
        s = Signature(n)
        assert hodge_dual(s.scalar()) == s.pseudoscalar()
        assert hodge_dual(s.pseudoscalar()) == 1


def test_inverse_examples(cl3):
    a = 2 * cl3.e(1, 2)
    inv = inverse(a)
    assert inv == -cl3.e(1, 2) / 2
    assert inv * a == 1 and a * inv == 1


@pytest.mark.parametrize("sig", [Signature(4), Signature(3, 1), Signature(1, 3, negative_first=True)])
def test_inverse_of_every_scaled_basis_blade(sig):
    for m in range(sig.size):
        a = sig.blade(m, Fraction(-3, 2))
        assert inverse(a) * a == 1
        gi = geometric_inverse(a)
        assert gi.grades() == {sig.n - m.bit_count()}
        assert gi == inverse(a) * sig.pseudoscalar()


def test_inverse_of_non_basis_blade():
    sig = Signature(3)
    a = sig.e(1) + 2 * sig.e(2)  # a vector is always a blade
    assert inverse(a) * a == 1
    b = wedge(sig.e(1) + sig.e(2), sig.e(2) + 3 * sig.e(3))
    assert inverse(b) * b == 1


def test_inverse_errors():
    sig = Signature(3, 1)
    with pytest.raises(NullBlade):
        inverse(sig.e(1) + sig.e(4))
    with pytest.raises(NotABlade):
        inverse(sig.scalar() + sig.e(1))
    cl4 = Signature(4)
    with pytest.raises(NotABlade):
        inverse(cl4.e(1, 2) + cl4.e(3, 4))


def test_hodge_dual_grade(cl4):
    for m in range(cl4.size):
        assert hodge_dual(cl4.blade(m)).grades() == {4 - m.bit_count()}


# --- multivector plumbing -------------------------------------------------------------


def test_zero_terms_not_stored(cl3):
    a = Multivector(cl3, {0: 0, 1: Fraction(0), 2: 5})
    assert dict(a.terms) == {2: 5}
    assert (a - a).terms == {}
    assert not (a - a)


def test_masks_validated(cl3):
    with pytest.raises(ValueError):
        Multivector(cl3, {8: 1})


def test_e_canonicalises_order(cl3):
    assert cl3.e(2, 1) == -cl3.e(1, 2)
    assert cl3.e(3, 1, 2) == cl3.e(1, 2, 3)
    assert cl3.e(1, 1) == 1
    assert Signature(0, 1).e(1, 1) == -1


def test_float_mode_comparison(cl3):
    mode = CoefficientMode.float_mode(1e-9)
    a = cl3.e(1).to_float() * 0.1 * 3
    b = cl3.e(1) * 0.3
    assert a != b
    assert mode.equal(a, b)
    assert not mode.equal(a, b + 1e-6 * cl3.e(2))
    assert EXACT.exact and not mode.exact


def test_division_is_exact(cl3):
    a = cl3.e(1) / 3
    assert a[1] == Fraction(1, 3)
    assert (a * 3) == cl3.e(1)
