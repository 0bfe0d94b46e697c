from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from plumbline.blowdown import (
    BlowdownError,
    EnhancedForm,
    blowdown_report,
    derive_congruence,
    expected_extension_count,
    extends_over_ball,
    extension_candidates_by_d,
)
from plumbline.charvec import good_vectors, initial_vectors
from plumbline.linalg import MatrixError

from conftest import W1_SQUARE_MINUS5, W2_SQUARE_MINUS6, W3_SQUARE_MINUS6, W4_SQUARE_MINUS7


def orthogonality_oracle(A, a):
    """Extends iff some integer x on the handle makes (a, x) orthogonal to ker A
    and characteristic there; solved with sympy independently of the library."""
    M = sympy.Matrix(A.matrix)
    (k,) = M.nullspace()
    n = A.n_original
    x = -sum(k[i] * a[i] for i in range(n)) / k[n]
    return x.is_integer and (int(x) - A.matrix[n][n]) % 2 == 0


class TestCandidatesByD:
    def test_w1(self, graphs):
        assert {c.representative for c in extension_candidates_by_d(graphs["w1"])} == W1_SQUARE_MINUS5

    def test_w2(self, graphs):
        assert {c.representative for c in extension_candidates_by_d(graphs["w2"])} == W2_SQUARE_MINUS6

    def test_w3(self, graphs):
        assert {c.representative for c in extension_candidates_by_d(graphs["w3"])} == W3_SQUARE_MINUS6

    def test_w4(self, graphs):
        assert {c.representative for c in extension_candidates_by_d(graphs["w4"])} == W4_SQUARE_MINUS7


class TestExtends:
    def test_w1_extenders(self, graphs, a1):
        ext = {a for a in good_vectors(graphs["w1"]) if extends_over_ball(a1, a).extends}
        assert ext == W1_SQUARE_MINUS5

    def test_w1_values(self, a1):
        v = extends_over_ball(a1, (0, 0, 0, 0, 3))
        assert v.extends and v.completed_values == (4,)
        v = extends_over_ball(a1, (0, 0, 0, 0, 1))
        assert not v.extends and v.obstruction == "non-integral"

    def test_w3_extenders(self, graphs, a3):
        ext = {a for a in good_vectors(graphs["w3"]) if extends_over_ball(a3, a).extends}
        assert ext == W3_SQUARE_MINUS6

    def test_parity_obstruction(self):
        # kernel (1, 1): the handle value is -a, characteristic iff it is odd
        A = EnhancedForm.from_matrix([[-1, 1], [1, -1]])
        v = extends_over_ball(A, (1,))
        assert v.completed_values == (-1,) and v.extends
        v = extends_over_ball(A, (2,))
        assert v.obstruction == "parity" and not v.extends

    def test_matches_oracle(self, graphs, a1, a3):
        for G, A in ((graphs["w1"], a1), (graphs["w3"], a3)):
            for a in initial_vectors(G):
                assert extends_over_ball(A, a).extends == orthogonality_oracle(A, a)

    def test_completion_is_orthogonal_and_characteristic(self, graphs, a1, a3):
        for G, A in ((graphs["w1"], a1), (graphs["w3"], a3)):
            (k,) = A.kernel()
            for a in initial_vectors(G):
                v = extends_over_ball(A, a)
                if v.extends:
                    full = list(a) + list(v.completed_values)
                    assert sum(Fraction(x) * y for x, y in zip(k, full)) == 0
                    assert all((full[j] - A.matrix[j][j]) % 2 == 0 for j in range(A.size))

    def test_wrong_length(self, a1):
        with pytest.raises(BlowdownError):
            extends_over_ball(a1, (0, 0, 3))

    def test_kernel_dimension_mismatch(self):
        # rank 1 on three coordinates: kernel of dimension 2, one handle
        A = EnhancedForm.from_matrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
        with pytest.raises(BlowdownError, match="dimension"):
            extends_over_ball(A, (1, 1))


class TestEnhancedForm:
    def test_not_symmetric(self):
        with pytest.raises(MatrixError):
            EnhancedForm.from_matrix([[0, 1], [0, 0]])

    def test_nondegenerate(self):
        with pytest.raises(BlowdownError, match="nondegenerate"):
            EnhancedForm.from_matrix([[-2, 1], [1, -2]])

    def test_block_mismatch(self, graphs, a1):
        with pytest.raises(BlowdownError, match="does not extend"):
            blowdown_report(graphs["w2"], a1)


class TestCongruence:
    def test_a1_text(self, a1):
        c = derive_congruence(a1)
        assert c.modulus == 3 and c.coefficients == (0, 0, 2, 1, 1)
        assert str(c) == "2*a3 + a4 + a5 = 0 (mod 3)"

    def test_a1_matches_stated_congruence(self, graphs, a1):
        c = derive_congruence(a1)
        for a in initial_vectors(graphs["w1"]):
            assert c.holds(a) == ((2 * a[2] + a[3] + a[4]) % 3 == 0)

    def test_a3_selects_extenders(self, graphs, a3):
        c = derive_congruence(a3)
        assert c.modulus == 5
        assert {a for a in good_vectors(graphs["w3"]) if c.holds(a)} == W3_SQUARE_MINUS6

    @given(st.lists(st.integers(-9, 9), min_size=5, max_size=5))
    def test_congruence_is_integrality(self, a1, a):
        assert derive_congruence(a1).holds(a) == (extends_over_ball(a1, a).obstruction != "non-integral")


class TestCount:
    @pytest.mark.parametrize("h,t", [(9, 3), (25, 5), (1, 1)])
    def test_squares(self, h, t):
        assert expected_extension_count(h) == t

    def test_with_s(self):
        assert expected_extension_count(18, 2) == 3

    def test_not_square(self):
        with pytest.raises(BlowdownError):
            expected_extension_count(8)


class TestReport:
    def test_w1(self, graphs, a1):
        rep = blowdown_report(graphs["w1"], a1)
        assert rep.hypotheses_ok and rep.necessity_ok and not rep.discrepancy
        assert set(rep.extenders) == W1_SQUARE_MINUS5 and rep.extenders_source == "kernel"

    def test_w2_flags_discrepancy(self, graphs):
        rep = blowdown_report(graphs["w2"])
        assert rep.expected_t == 3 and len(rep.d_zero) == 5
        assert rep.discrepancy

    def test_w3(self, graphs, a3):
        rep = blowdown_report(graphs["w3"], a3)
        assert set(rep.extenders) == set(rep.d_zero) == W3_SQUARE_MINUS6
        assert not rep.discrepancy

    def test_w4(self, graphs):
        rep = blowdown_report(graphs["w4"])
        assert set(rep.d_zero) == W4_SQUARE_MINUS7 and not rep.discrepancy
