import numpy as np
import pytest

from cyclic6j.context import DomainError
from cyclic6j.dilog import (CyclicDilogParams,
                            cyclic_dilog_op, dilog_spectrum,
                            dilog_spectrum_reference, embed_pair,
                            make_anticyclic_pair, params_from_thm410_inputs,
                            sample_thm410_inputs, solve_thm410_params,
                            thm410_constraints_residual, thm410_residual,
                            upsilon, upsilon_hat_form,
                            upsilon_pentagon_residual)
from cyclic6j.specfun import rel_residual
from cyclic6j.weylrep import mat_Y


def _sorted_set_match(a, b, tol=1e-9):
    """Greedy matching of two complex multisets."""
    b = list(b)
    for v in a:
        j = int(np.argmin([abs(v - w) for w in b]))
        if abs(v - b[j]) > tol:
            return False
        b.pop(j)
    return True


class TestParams:
    def test_constraint_enforced(self, ctx3):
        with pytest.raises(DomainError):
            CyclicDilogParams.make(ctx3, 1.0, 1.0, 1.0)

    def test_surface_members(self, ctx, rng):
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        for p in params_from_thm410_inputs(ctx, x0, x1, y2, y4):
            s = abs(p.a ** ctx.N + p.c ** ctx.N - p.b ** ctx.N)
            assert s < 1e-9 * max(abs(p.a), abs(p.b), abs(p.c)) ** ctx.N


class TestAnticyclicPair:
    def test_conditions(self, ctx):
        U, V = make_anticyclic_pair(ctx)
        I = np.eye(ctx.N)
        assert rel_residual(np.linalg.matrix_power(U, ctx.N), -I) < 1e-12
        assert rel_residual(np.linalg.matrix_power(V, ctx.N), -I) < 1e-12
        assert rel_residual(U @ V, ctx.omega * V @ U) < 1e-12

    def test_spectra(self, ctx):
        U, V = make_anticyclic_pair(ctx)
        expect = [-ctx.omega_pow(n) for n in range(ctx.N)]
        assert _sorted_set_match(np.linalg.eigvals(U), expect)
        assert _sorted_set_match(np.linalg.eigvals(V), expect)


class TestDilogOp:
    def test_identity_coefficient(self, ctx, rng):
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        p = params_from_thm410_inputs(ctx, x0, x1, y2, y4)[0]
        U, _ = make_anticyclic_pair(ctx)
        psi = cyclic_dilog_op(ctx, p, U)
        # n = 0 term contributes h * id; subtracting the rest leaves it
        assert psi.shape == (ctx.N, ctx.N)

    def test_functional_identity(self, ctx, rng):
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        ps = params_from_thm410_inputs(ctx, x0, x1, y2, y4)
        U, V = make_anticyclic_pair(ctx)
        for p, A in ((ps[0], U), (ps[1], V)):
            lhs = cyclic_dilog_op(ctx, p, ctx.omega_pow(-1) * A)
            rhs = ((p.c * np.eye(ctx.N) - p.a * A) / p.b) @ cyclic_dilog_op(ctx, p, A)
            assert rel_residual(lhs, rhs) < 1e-11

    def test_spectrum_condition_checked(self, ctx, rng):
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        p = params_from_thm410_inputs(ctx, x0, x1, y2, y4)[0]
        with pytest.raises(DomainError):
            cyclic_dilog_op(ctx, p, np.eye(ctx.N))

    def test_diagonal_spectrum(self, ctx, rng):
        # on A = -diag(w^n) the operator is diagonal with entries proportional
        # to the omega-function of the sign-flipped triple
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        p = params_from_thm410_inputs(ctx, x0, x1, y2, y4)[1]
        A = -np.diag([ctx.omega_pow(n) for n in range(ctx.N)])
        psi = cyclic_dilog_op(ctx, p, A)
        spec = dilog_spectrum(ctx, p)
        assert rel_residual(np.diag(psi), spec) < 1e-11
        assert rel_residual(spec, dilog_spectrum_reference(ctx, p)) < 1e-10


class TestUpsilon:
    def test_two_forms_agree(self, ctx):
        assert rel_residual(upsilon(ctx), upsilon_hat_form(ctx)) < 1e-12

    def test_action_formula(self, ctx):
        # Upsilon(v_k (x) v_l) = v_k (x) Y^k v_l
        N = ctx.N
        U = upsilon(ctx)
        Y = mat_Y(ctx)
        for k in range(N):
            Yk = np.linalg.matrix_power(Y, k)
            for l in range(N):
                col = U[:, k * N + l].reshape(N, N)
                expect = np.outer(np.eye(N)[k], Yk[:, l])
                assert np.abs(col - expect).max() < 1e-12

    def test_inverse_entries(self, ctx):
        # (Upsilon^{-1})^{k,l}_{i,j} = w^{-k^2/2 - kj} delta(i-k) delta(j+k-l)
        N = ctx.N
        Uinv = np.linalg.inv(upsilon(ctx))
        for k in range(N):
            for l in range(N):
                for i in range(N):
                    for j in range(N):
                        expect = 0.0
                        if i == k and (j + k - l) % N == 0:
                            expect = ctx.omega_pow(-k * k, 1) * ctx.omega_pow(-k * j)
                        assert abs(Uinv[i * N + j, k * N + l] - expect) < 1e-11

    def test_pentagon(self, ctx):
        assert upsilon_pentagon_residual(ctx) < 1e-12


class TestEmbedding:
    def test_slots(self, ctx3, rng):
        N = 3
        A = rng.normal(size=(N * N, N * N)) + 1j * rng.normal(size=(N * N, N * N))
        B12 = embed_pair(ctx3, A, (0, 1))
        assert np.allclose(B12, np.kron(A, np.eye(N)))
        B23 = embed_pair(ctx3, A, (1, 2))
        assert np.allclose(B23, np.kron(np.eye(N), A))
        with pytest.raises(ValueError):
            embed_pair(ctx3, A, (2, 0))


class TestFiveTerm:
    def test_constraints_on_output(self, ctx, rng):
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        ps = solve_thm410_params(ctx, x0, x1, y2, y4)
        assert thm410_constraints_residual(ps) < 1e-10

    def test_identity_after_det_fix(self, ctx, rng):
        x0, x1, y2, y4 = sample_thm410_inputs(ctx, rng)
        ps = params_from_thm410_inputs(ctx, x0, x1, y2, y4)
        res, det_err = thm410_residual(ctx, ps)
        assert res < 1e-10
        assert det_err < 1e-10

    def test_off_surface_rejected(self, ctx3):
        with pytest.raises(DomainError):
            params_from_thm410_inputs(ctx3, 0.5, 0.4, 0.9, 1.1)
