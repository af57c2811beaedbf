"""Floating-point verification of the standard local symplectic models.

Conventions (pinned once, used consistently below):

* Chart ``C^k x R^l x T^l`` has coordinates
  ``(x_1, y_1, ..., x_k, y_k, eta_1..eta_l, theta_1..theta_l)`` with the
  torus angles stored in turns (mod 1).
* On a complex factor a Lie-algebra element ``xi`` generates the rotation
  field ``xi * (-y d/dx + x d/dy)``; on a torus factor it generates the
  translation ``xi * d/dtheta``.  The moment map is
  ``(|z_1|^2, ..., |z_k|^2, eta)``.
* The chart constant of the standard form on a complex factor is then
  forced by the moment convention ``d<mu, xi> = -omega(xi_M, .)``:
  ``d|z|^2 = 2x dx + 2y dy`` while ``-omega(xi_M, .) = c (x dx + y dy)``
  for ``omega = c dx ^ dy``, so ``c = 2``.  On ``R^l x T^l`` the matching
  form is ``sum deta_j ^ dtheta_j``, and on a trivial bundle ``U x G`` it
  is ``sum dp_i ^ dtheta_i`` (flat connection ``dtheta``, pairing
  ``<psi, g^{-1}dg> = sum psi_i dtheta_i``).

Tolerances: 1e-6 for finite-difference identities at step 1e-4, 1e-9 for
algebraically exact cancellations, 1e-12 for the Lagrangian-section
pullback; deliberately mis-normalized controls must exceed 1e-2.  Double
precision only; sampling rejects the corner locus ``|z_i| < 0.1``.
"""

from __future__ import annotations

import numpy as np

FD_TOL = 1e-6
EXACT_TOL = 1e-9
LAGRANGIAN_TOL = 1e-12
CONTROL_FLOOR = 1e-2
CORNER_RADIUS = 0.1


class ChartModel:
    """Local model C^k x R^l x T^l with toric moment map."""

    def __init__(self, k: int, l: int):
        if k < 0 or l < 0 or k + l < 1:
            raise ValueError("need k, l >= 0 with k + l >= 1")
        self.k = k
        self.l = l
        self.n = k + l
        self.dim = 2 * k + 2 * l

    def symplectic_form(self, chart_constant: float = 2.0) -> np.ndarray:
        """Constant coefficient matrix; chart_constant scales the C blocks."""
        d = self.dim
        omega = np.zeros((d, d))
        for j in range(self.k):
            omega[2 * j, 2 * j + 1] = chart_constant
            omega[2 * j + 1, 2 * j] = -chart_constant
        for j in range(self.l):
            a = 2 * self.k + j
            b = 2 * self.k + self.l + j
            omega[a, b] = 1.0
            omega[b, a] = -1.0
        return omega

    def moment(self, points: np.ndarray) -> np.ndarray:
        out = np.empty((points.shape[0], self.n))
        for j in range(self.k):
            out[:, j] = points[:, 2 * j] ** 2 + points[:, 2 * j + 1] ** 2
        out[:, self.k :] = points[:, 2 * self.k : 2 * self.k + self.l]
        return out

    def field(self, xi: np.ndarray, points: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (self.n,):
            raise ValueError("Lie algebra element has wrong dimension")
        vec = np.zeros_like(points)
        for j in range(self.k):
            vec[:, 2 * j] = -xi[j] * points[:, 2 * j + 1]
            vec[:, 2 * j + 1] = xi[j] * points[:, 2 * j]
        for j in range(self.l):
            vec[:, 2 * self.k + self.l + j] = xi[self.k + j]
        return vec

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        pts = np.empty((count, self.dim))
        for j in range(self.k):
            need = np.arange(count)
            while need.size:
                xy = rng.uniform(-1.5, 1.5, size=(need.size, 2))
                ok = np.hypot(xy[:, 0], xy[:, 1]) >= CORNER_RADIUS
                pts[need[ok], 2 * j : 2 * j + 2] = xy[ok]
                need = need[~ok]
        pts[:, 2 * self.k : 2 * self.k + self.l] = rng.uniform(
            -1.5, 1.5, size=(count, self.l)
        )
        pts[:, 2 * self.k + self.l :] = rng.uniform(0.0, 1.0, size=(count, self.l))
        return pts


class TrivialBundle:
    """U x G over a box U in R^n, coordinates (p_1..p_n, theta_1..theta_n)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("need n >= 1")
        self.n = n
        self.dim = 2 * n

    def symplectic_form(self) -> np.ndarray:
        n = self.n
        omega = np.zeros((2 * n, 2 * n))
        omega[:n, n:] = np.eye(n)
        omega[n:, :n] = -np.eye(n)
        return omega

    def moment(self, points: np.ndarray) -> np.ndarray:
        return points[:, : self.n].copy()

    def field(self, xi: np.ndarray, points: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        vec = np.zeros_like(points)
        vec[:, self.n :] = xi
        return vec

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        pts = np.empty((count, self.dim))
        pts[:, : self.n] = rng.uniform(0.05, 0.95, size=(count, self.n))
        pts[:, self.n :] = rng.uniform(0.0, 1.0, size=(count, self.n))
        return pts


def moment_residual(
    model,
    xi,
    samples: int = 1000,
    h: float = 1e-4,
    seed: int = 0,
    form: np.ndarray | None = None,
) -> float:
    """max |d<mu,xi>(e_v) + omega(xi_M, e_v)| over samples and directions.

    d<mu,xi> uses central differences of step h; the contraction with the
    form is evaluated exactly from the constant coefficient matrix.
    """
    rng = np.random.default_rng(seed)
    pts = model.sample(rng, samples)
    omega = model.symplectic_form() if form is None else form
    xi = np.asarray(xi, dtype=float)
    contraction = model.field(xi, pts) @ omega
    worst = 0.0
    for v in range(model.dim):
        step = np.zeros(model.dim)
        step[v] = h
        dmu = (model.moment(pts + step) - model.moment(pts - step)) @ xi / (2 * h)
        worst = max(worst, float(np.abs(dmu + contraction[:, v]).max()))
    return worst


def _exterior_derivative_max(form_fn, points: np.ndarray, h: float) -> float:
    """max |(d sigma)_{abc}| by central differences of the coefficients."""
    n, d = points.shape
    partial = np.empty((d, n, d, d))
    for a in range(d):
        step = np.zeros(d)
        step[a] = h
        partial[a] = (form_fn(points + step) - form_fn(points - step)) / (2 * h)
    worst = 0.0
    for a in range(d):
        for b in range(a + 1, d):
            for c in range(b + 1, d):
                val = partial[a][:, b, c] - partial[b][:, a, c] + partial[c][:, a, b]
                worst = max(worst, float(np.abs(val).max()))
    return worst


def trivial_bundle_checks(
    n: int, samples: int = 1000, h: float = 1e-4, seed: int = 0
) -> dict:
    """Canonical form on U x G: closed, determinant one, moment convention,
    and the constant section is Lagrangian."""
    bundle = TrivialBundle(n)
    rng = np.random.default_rng(seed)
    pts = bundle.sample(rng, samples)
    omega = bundle.symplectic_form()

    closedness = _exterior_derivative_max(
        lambda q: np.broadcast_to(omega, (q.shape[0],) + omega.shape), pts, h
    )
    det_error = abs(float(np.linalg.det(omega)) - 1.0)

    moment_res = 0.0
    for i in range(n):
        xi = np.zeros(n)
        xi[i] = 1.0
        moment_res = max(moment_res, moment_residual(bundle, xi, samples, h, seed))

    # constant section s(x) = (x, 1): Jacobian [I; 0], pullback J^T omega J
    jac = np.vstack([np.eye(n), np.zeros((n, n))])
    section_pullback = float(np.abs(jac.T @ omega @ jac).max())

    return {
        "n": n,
        "closedness_residual": closedness,
        "determinant_error": det_error,
        "moment_residual": moment_res,
        "lagrangian_section_pullback": section_pullback,
        "pass": bool(
            closedness <= FD_TOL
            and det_error <= EXACT_TOL
            and moment_res <= FD_TOL
            and section_pullback <= LAGRANGIAN_TOL
        ),
    }


def _double_bundle_forms(n: int, beta_coefficient: float, nonbasic: float):
    """(sigma + sigma') on (p, theta, p', theta'); optional second-factor terms.

    beta_coefficient adds the horizontal term b dp'_1 ^ dp'_2 (needs n >= 2);
    nonbasic adds c dp'_1 ^ dtheta'_1, which breaks the moment alignment.
    """
    d = 4 * n
    total = np.zeros((d, d))
    single = TrivialBundle(n).symplectic_form()
    total[: 2 * n, : 2 * n] = single
    total[2 * n :, 2 * n :] = single
    if beta_coefficient:
        if n < 2:
            raise ValueError("the horizontal perturbation needs n >= 2")
        a, b = 2 * n, 2 * n + 1
        total[a, b] += beta_coefficient
        total[b, a] -= beta_coefficient
    if nonbasic:
        a, b = 2 * n, 3 * n
        total[a, b] += nonbasic
        total[b, a] -= nonbasic
    return total


def tensor_reduction_check(
    n: int,
    samples: int = 1000,
    seed: int = 0,
    beta_coefficient: float = 0.0,
    nonbasic: float = 0.0,
) -> dict:
    """Reduction of two trivial bundles by the anti-diagonal action.

    Verifies that the difference of the two projections vanishes exactly on
    the fiber product and nowhere off it, that its moment convention for
    the anti-diagonal action holds, that the anti-diagonal contraction
    vanishes on fiber-product tangents, and that the induced form on a
    transversal slice is nondegenerate.
    """
    rng = np.random.default_rng(seed)
    total = _double_bundle_forms(n, beta_coefficient, nonbasic)
    single = TrivialBundle(n)
    half = single.sample(rng, samples)  # (p, theta)
    theta2 = rng.uniform(0.0, 1.0, size=(samples, n))
    fiber = np.hstack([half, half[:, :n], theta2])  # p' = p exactly

    mu = fiber[:, :n] - fiber[:, 2 * n : 3 * n]
    on_level = float(np.abs(mu).max())

    off = fiber.copy()
    off[:, 2 * n : 3 * n] += rng.uniform(0.2, 0.5, size=(samples, n))
    off_mu = off[:, :n] - off[:, 2 * n : 3 * n]
    off_level = float(np.abs(off_mu).max(axis=1).min())

    # anti-diagonal fields and basis of Lie algebra
    worst_contraction = 0.0
    worst_alignment = 0.0
    d = 4 * n
    tangents = []
    for i in range(n):
        t = np.zeros(d)
        t[i] = 1.0
        t[2 * n + i] = 1.0
        tangents.append(t)
    for i in range(n):
        t = np.zeros(d)
        t[n + i] = 1.0
        tangents.append(t)
    for i in range(n):
        t = np.zeros(d)
        t[3 * n + i] = 1.0
        tangents.append(t)
    for i in range(n):
        field = np.zeros(d)
        field[n + i] = 1.0  # theta_i component
        field[3 * n + i] = -1.0  # -theta'_i component
        contraction = field @ total
        for t in tangents:
            worst_contraction = max(worst_contraction, abs(float(contraction @ t)))
        # alignment: d<mu, e_i> should equal -contraction in every direction
        dmu = np.zeros(d)
        dmu[i] = 1.0
        dmu[2 * n + i] = -1.0
        worst_alignment = max(worst_alignment, float(np.abs(dmu + contraction).max()))

    slice_vectors = np.array(tangents[: 2 * n])
    induced = slice_vectors @ total @ slice_vectors.T
    slice_det = float(np.linalg.det(induced))

    return {
        "n": n,
        "beta_coefficient": beta_coefficient,
        "nonbasic_coefficient": nonbasic,
        "fiber_level_residual": on_level,
        "off_fiber_min_moment": off_level,
        "antidiagonal_contraction": worst_contraction,
        "moment_alignment_residual": worst_alignment,
        "slice_determinant": slice_det,
        "pass": bool(
            on_level == 0.0
            and off_level > 0.0
            and worst_contraction <= EXACT_TOL
            and worst_alignment <= EXACT_TOL
            and abs(slice_det) > EXACT_TOL
        ),
    }


def star_chart_check(k: int, l: int, samples: int = 100, seed: int = 0) -> dict:
    """Fiber-product chart of a trivial bundle with the local model.

    The chart map sends (g, z, eta, theta) to ((|z|^2, eta), g, (z, eta,
    theta)); membership in the fiber product is exact by construction and
    is asserted bitwise.  The induced class of (p, g, m) absorbs g into m;
    twisting a representative by any group element must not change it.
    """
    model = ChartModel(k, l)
    n = model.n
    rng = np.random.default_rng(seed)
    m_pts = model.sample(rng, samples)
    g_pts = rng.uniform(0.0, 1.0, size=(samples, n))

    def project(points: np.ndarray) -> np.ndarray:
        return model.moment(points)

    def act(group: np.ndarray, points: np.ndarray) -> np.ndarray:
        out = points.copy()
        phases = 2 * np.pi * group[:, :k]
        for j in range(k):
            x = points[:, 2 * j]
            y = points[:, 2 * j + 1]
            c = np.cos(phases[:, j])
            s = np.sin(phases[:, j])
            out[:, 2 * j] = c * x - s * y
            out[:, 2 * j + 1] = s * x + c * y
        out[:, 2 * k + l :] = np.mod(points[:, 2 * k + l :] + group[:, k:], 1.0)
        return out

    # chart lands in the fiber product: base coordinate equals the
    # projection of the model point, computed by the same expression
    base = project(m_pts)
    membership_exact = bool(np.array_equal(base, project(m_pts)))

    image = np.hstack([base, g_pts, m_pts])
    injective = True
    for i in range(samples):
        diff = np.abs(image[i + 1 :] - image[i]).max(axis=1)
        if diff.size and diff.min() < 1e-12:
            injective = False
            break

    def normal_form(group: np.ndarray, points: np.ndarray) -> np.ndarray:
        return np.hstack([project(points), act(group, points)])

    twist = rng.uniform(0.0, 1.0, size=(samples, n))
    rep_a = normal_form(g_pts, m_pts)
    rep_b = normal_form(np.mod(g_pts - twist, 1.0), act(twist, m_pts))
    diff = np.abs(rep_a - rep_b)
    # angle slots compare circularly
    theta_cols = slice(n + 2 * k + l, n + 2 * k + 2 * l)
    diff[:, theta_cols] = np.abs(
        np.mod(rep_a[:, theta_cols] - rep_b[:, theta_cols] + 0.5, 1.0) - 0.5
    )
    orbit_residual = float(diff.max())

    return {
        "k": k,
        "l": l,
        "membership_exact": membership_exact,
        "injective_on_samples": injective,
        "orbit_normal_form_residual": orbit_residual,
        "pass": bool(membership_exact and injective and orbit_residual <= EXACT_TOL),
    }


def form_decomposition_check(
    sigma_fn,
    n: int,
    samples: int = 1000,
    h: float = 1e-4,
    seed: int = 0,
    connection_offset: np.ndarray | None = None,
    expected_beta: np.ndarray | None = None,
) -> dict:
    """Split an invariant form on U x G into d<psi.pi, A> plus a basic part.

    ``sigma_fn`` maps sample points (N, 2n) to coefficient matrices
    (N, 2n, 2n) and must be invariant under the torus.  The connection is
    the flat A = dtheta + alpha with an optional constant offset alpha
    (rows: Lie coordinates, columns: dp directions).  The remainder must
    be horizontal and closed; if ``expected_beta`` is given the recovered
    part must match it.
    """
    bundle = TrivialBundle(n)
    rng = np.random.default_rng(seed)
    pts = bundle.sample(rng, samples)

    shifted = pts.copy()
    shifted[:, n:] = rng.uniform(0.0, 1.0, size=(samples, n))
    invariance = float(np.abs(sigma_fn(pts) - sigma_fn(shifted)).max())
    if invariance > EXACT_TOL:
        raise ValueError(
            f"form is not torus-invariant (residual {invariance:.3e})"
        )

    exact_part = bundle.symplectic_form()
    if connection_offset is not None:
        alpha = np.asarray(connection_offset, dtype=float)
        exact_part = exact_part.copy()
        exact_part[:n, :n] += alpha - alpha.T

    def beta_fn(points: np.ndarray) -> np.ndarray:
        return sigma_fn(points) - exact_part

    beta_vals = beta_fn(pts)
    horizontality = float(np.abs(beta_vals[:, :, n:]).max())
    closedness = _exterior_derivative_max(beta_fn, pts, h)
    recovery = None
    if expected_beta is not None:
        recovery = float(np.abs(beta_vals - expected_beta).max())

    ok = horizontality <= EXACT_TOL and closedness <= FD_TOL
    if recovery is not None:
        ok = ok and recovery <= EXACT_TOL
    return {
        "n": n,
        "invariance_residual": invariance,
        "horizontality_residual": horizontality,
        "closedness_residual": closedness,
        "beta_recovery_error": recovery,
        "pass": bool(ok),
    }


def canonical_sigma(n: int):
    """sigma = sum dp_i ^ dtheta_i as a constant form function."""
    omega = TrivialBundle(n).symplectic_form()

    def fn(points: np.ndarray) -> np.ndarray:
        return np.broadcast_to(omega, (points.shape[0],) + omega.shape).copy()

    return fn


def sigma_with_basic_term(n: int, coefficient: float = 1.0):
    """Canonical form plus the pullback of coefficient * dp_1 ^ dp_2."""
    if n < 2:
        raise ValueError("the basic perturbation needs n >= 2")
    omega = TrivialBundle(n).symplectic_form()
    omega = omega.copy()
    omega[0, 1] += coefficient
    omega[1, 0] -= coefficient
    beta = np.zeros_like(omega)
    beta[0, 1] = coefficient
    beta[1, 0] = -coefficient

    def fn(points: np.ndarray) -> np.ndarray:
        return np.broadcast_to(omega, (points.shape[0],) + omega.shape).copy()

    return fn, beta


def sigma_noninvariant(n: int, amplitude: float = 0.5):
    """Canonical form with a theta-dependent coefficient: not invariant."""
    omega = TrivialBundle(n).symplectic_form()

    def fn(points: np.ndarray) -> np.ndarray:
        out = np.broadcast_to(omega, (points.shape[0],) + omega.shape).copy()
        wobble = amplitude * np.sin(2 * np.pi * points[:, n])
        out[:, 0, n] += wobble
        out[:, n, 0] -= wobble
        return out

    return fn


def run_suite(k: int, l: int, samples: int = 1000, h: float = 1e-4, seed: int = 0) -> dict:
    """Every local-model check for one chart model, with negative controls."""
    model = ChartModel(k, l)
    n = model.n

    xis = [np.eye(n)[i] for i in range(n)] + [np.ones(n)]
    residuals = [moment_residual(model, xi, samples, h, seed) for xi in xis]
    control = moment_residual(
        model, np.ones(n), samples, h, seed, form=model.symplectic_form(1.0)
    )
    moment_report = {
        "model": [k, l],
        "max_residual": max(residuals),
        "per_generator": residuals,
        "misnormalized_residual": control,
        "pass": bool(
            max(residuals) <= FD_TOL
            and (k == 0 or control > CONTROL_FLOOR)
        ),
    }

    bundle_report = trivial_bundle_checks(n, samples, h, seed)

    reduction_reports = [tensor_reduction_check(n, samples, seed)]
    if n >= 2:
        reduction_reports.append(
            tensor_reduction_check(n, samples, seed, beta_coefficient=1.0)
        )
    negative = tensor_reduction_check(n, samples, seed, nonbasic=1.0)
    reduction_ok = all(r["pass"] for r in reduction_reports) and (
        negative["moment_alignment_residual"] > CONTROL_FLOOR
    )

    star_report = star_chart_check(k, l, min(samples, 200), seed)

    decomposition_reports = [
        form_decomposition_check(canonical_sigma(n), n, samples, h, seed,
                                 expected_beta=np.zeros((2 * n, 2 * n)))
    ]
    if n >= 2:
        fn, beta = sigma_with_basic_term(n)
        expected = np.zeros((2 * n, 2 * n))
        expected[:2, :2] = beta[:2, :2]
        decomposition_reports.append(
            form_decomposition_check(fn, n, samples, h, seed, expected_beta=expected)
        )
    try:
        form_decomposition_check(sigma_noninvariant(n), n, samples, h, seed)
        noninvariant_rejected = False
    except ValueError:
        noninvariant_rejected = True
    decomposition_ok = all(r["pass"] for r in decomposition_reports) and noninvariant_rejected

    all_pass = bool(
        moment_report["pass"]
        and bundle_report["pass"]
        and reduction_ok
        and star_report["pass"]
        and decomposition_ok
    )
    return {
        "model": [k, l],
        "samples": samples,
        "h": h,
        "seed": seed,
        "moment_convention": moment_report,
        "trivial_bundle": bundle_report,
        "tensor_reduction": {
            "positive": reduction_reports,
            "negative_control": negative,
            "pass": bool(reduction_ok),
        },
        "star_chart": star_report,
        "form_decomposition": {
            "positive": decomposition_reports,
            "noninvariant_rejected": noninvariant_rejected,
            "pass": bool(decomposition_ok),
        },
        "all_pass": all_pass,
    }
