import numpy as np
import pytest

from crwedge import expressions as ex
from crwedge.errors import (
    DomainError,
    ExprNameError,
    ExprSyntaxError,
    ExprTypeError,
    InvalidInputError,
)

from symbolic_oracle import symbolic_hessian


class TestParse:
    def test_example_defining_function(self):
        node = ex.parse("abs2(w1) + abs2(w2) - 2.1*Im(w1*conj(w2))")
        assert isinstance(node, ex.BinOp) and node.op == "-"
        assert node.is_real

    def test_squares_of_imaginary_parts(self):
        node = ex.parse("Im(w1)^2 - Im(w2)^2")
        assert node.is_real

    def test_complex_at_real_root(self):
        with pytest.raises(ExprTypeError):
            ex.parse("w1 + 1")

    def test_fractional_power_needs_real_base(self):
        ex.parse("Re(w1)^0.75")  # fine
        ex.parse("abs2(w1)^(3/4)")  # fine
        with pytest.raises(ExprTypeError):
            ex.parse("Re(w1 ^ 0.75)")

    def test_syntax_error_position(self):
        with pytest.raises(ExprSyntaxError) as info:
            ex.parse("abs2(w1) + ")
        assert info.value.position == 11

    def test_unknown_identifier(self):
        with pytest.raises(ExprNameError):
            ex.parse("abs2(q1)")

    def test_unknown_character(self):
        with pytest.raises(ExprSyntaxError):
            ex.parse("abs2(w1) % 3")

    def test_signature_bound(self):
        with pytest.raises(ExprNameError):
            ex.parse("abs2(w2)", l=1, n=1)

    def test_empty(self):
        with pytest.raises(ExprSyntaxError):
            ex.parse("   ")

    @pytest.mark.parametrize("source", [
        "abs2(w1) + abs2(w2) - 2.1*Im(w1*conj(w2))",
        "Im(w1)^2 - Im(w2)^2",
        "x1^2 - 3*x1*Re(w1) + abs2(w1)^2",
        "-(Re(w1) - Im(w2))*x1",
        "abs2(w1)^(3/4) + 0.5",
    ])
    def test_round_trip(self, source):
        node = ex.parse(source)
        printed = ex.to_source(node)
        assert ex.parse(printed) == node


class TestEvaluate:
    def test_near_negative_at_w0(self):
        node = ex.parse("abs2(w1) + abs2(w2) - 2.1*Im(w1*conj(w2))")
        val = ex.evaluate(node, [], [-1 + 1j, 1 + 1j])
        assert val == pytest.approx(-0.2)

    def test_imaginary_square(self):
        node = ex.parse("Im(w1)^2 - Im(w2)^2")
        assert ex.evaluate(node, [], [1j, 0]) == pytest.approx(1.0)

    def test_abs2(self):
        node = ex.parse("abs2(w1)")
        assert ex.evaluate(node, [], [3 + 4j]) == pytest.approx(25.0)

    def test_vectorized_grid(self):
        node = ex.parse("abs2(w1) + x1^2")
        x = np.linspace(0, 1, 8)[None, :]
        w = np.exp(1j * np.linspace(0, 2, 8))[None, :]
        vals = ex.evaluate(node, x, w)
        assert vals.shape == (8,)
        assert np.allclose(vals, 1.0 + x[0] ** 2)

    def test_dimension_mismatch(self):
        node = ex.parse("abs2(w2)")
        with pytest.raises(InvalidInputError):
            ex.evaluate(node, [], [1.0])

    def test_fractional_power_of_negative(self):
        node = ex.parse("Re(w1)^0.75")
        with pytest.raises(DomainError):
            ex.evaluate(node, [], [-1.0 + 0j])

    def test_deterministic(self):
        node = ex.parse("abs2(w1) - 0.3*Re(w1)*Im(w1)")
        vals = {ex.evaluate(node, [], [0.3 + 0.7j]) for _ in range(10)}
        assert len(vals) == 1


class TestSecondDerivatives:
    def test_abs2_mixed_coefficient(self):
        node = ex.parse("abs2(w1)")
        A = ex.second_derivatives(node, ([], [0j]))
        assert A[0, 0] == pytest.approx(1.0, abs=1e-9)

    def test_imaginary_square_mixed_coefficient(self):
        node = ex.parse("Im(w1)^2")
        A = ex.second_derivatives(node, ([], [0j]))
        assert A[0, 0] == pytest.approx(0.5, abs=1e-9)

    def test_example_levi_value(self):
        node = ex.parse("abs2(w1) + abs2(w2) - 2.1*Im(w1*conj(w2))")
        A = ex.second_derivatives(node, ([], [0j, 0j]))
        w0 = np.array([-1 + 1j, 1 + 1j])
        assert np.real(w0 @ A @ w0.conj()) == pytest.approx(-0.2, abs=1e-7)
        assert np.max(np.abs(A - A.conj().T)) < 1e-9

    def test_validity_box(self):
        node = ex.parse("abs2(w1)")
        with pytest.raises(DomainError):
            ex.second_derivatives(node, ([], [0.8 + 0j]))

    def test_step_underflow(self):
        node = ex.parse("abs2(w1)")
        from crwedge.errors import AccuracyError

        with pytest.raises(AccuracyError):
            ex.real_hessian(node, ([], [0j]), step=1e-10)


def _random_expression(rng, l, n, depth=3):
    """Random real-rooted polynomial expression of degree <= 4."""
    def complex_leaf():
        choice = rng.integers(0, 3)
        if choice == 0:
            return ex.Var("w", int(rng.integers(1, n + 1)))
        if choice == 1:
            return ex.Call("conj", ex.Var("w", int(rng.integers(1, n + 1))))
        return ex.BinOp("*", ex.Var("w", int(rng.integers(1, n + 1))),
                        ex.Call("conj", ex.Var("w", int(rng.integers(1, n + 1)))))

    def real_node(d):
        choice = rng.integers(0, 7 if d > 0 else 3)
        if choice == 0:
            return ex.Num(float(np.round(rng.uniform(-2, 2), 3)))
        if choice == 1:
            return ex.Var("x", int(rng.integers(1, l + 1)))
        if choice == 2:
            fn = ("Re", "Im", "abs2")[rng.integers(0, 3)]
            return ex.Call(fn, complex_leaf())
        if choice == 3:
            return ex.BinOp("+", real_node(d - 1), real_node(d - 1))
        if choice == 4:
            return ex.BinOp("-", real_node(d - 1), real_node(d - 1))
        if choice == 5:
            return ex.BinOp("*", real_node(0), real_node(d - 1))
        return ex.Neg(real_node(d - 1))

    return real_node(depth)


def test_finite_differences_match_symbolic_oracle():
    rng = np.random.default_rng(42)
    l, n = 1, 2
    checked = 0
    for _ in range(50):
        node = _random_expression(rng, l, n)
        x = rng.uniform(-0.2, 0.2, size=l)
        w = rng.uniform(-0.2, 0.2, size=n) + 1j * rng.uniform(-0.2, 0.2, size=n)
        # truncation vanishes exactly on degree-<=4 polynomials, so a
        # coarser step only lowers roundoff (eps |f| / h^2)
        numeric = ex.real_hessian(node, (x, w), step=4e-4)
        exact = symbolic_hessian(node, (x, w), l, n)
        scale = max(1.0, np.max(np.abs(exact)))
        assert np.max(np.abs(numeric - exact)) <= 1e-7 * scale
        checked += 1
    assert checked == 50


class TestDefiningMap:
    def test_rejects_nonzero_at_origin(self):
        with pytest.raises(InvalidInputError):
            ex.DefiningMap.from_sources(["abs2(w1) + 1"], 1, 1)

    def test_rejects_nonzero_gradient(self):
        with pytest.raises(InvalidInputError):
            ex.DefiningMap.from_sources(["Re(w1)"], 1, 1)

    def test_component_count(self):
        with pytest.raises(InvalidInputError):
            ex.DefiningMap.from_sources(["abs2(w1)"], 2, 1)

    def test_evaluate_all_components(self):
        dm = ex.DefiningMap.from_sources(["abs2(w1)", "x1*Re(w1)* 0"], 2, 1)
        out = dm(np.zeros(2), np.array([2j]))
        assert out.shape == (2,)
        assert out[0] == pytest.approx(4.0)
