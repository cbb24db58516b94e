//! Elements of the universal cover of `Sp(2g, R)` as tracked paths.
//!
//! An element is a program of transvection segments together with its float
//! endpoint and a winding number: the total unwrapped phase of the complex
//! determinant of the orthogonal polar factor along the path from the
//! identity. Two homotopic paths give equal totals, and the generator of the
//! fundamental group winds by ±2π, so the winding realizes the central
//! coordinate of the cover without any explicit 2-cocycle.
//!
//! Sign conventions, pinned by the requirement that the ascending chain word
//! have displacement angle −π/2: the standard complex structure sends
//! `e_k ↦ f_k, f_k ↦ −e_k` (so `θ(v, J0 v) > 0`), and the symmetric form of a
//! Lie-algebra element is `γ_x(u, v) = θ(u, x v)`, under which right-handed
//! twists land in the non-positive cone.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::artin::{BraidWord, Sign};
use crate::symprep::{chain_classes, LatticeVector, SympMatrix, SymprepError};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("matrix is not symplectic within tolerance (defect {defect:.3e})")]
    NotSymplectic { defect: f64 },
    #[error("polar factor fails the commutation check with J0 (defect {defect:.3e})")]
    PolarCommutation { defect: f64 },
    #[error("adaptive phase subdivision depth exhausted (pathological conditioning)")]
    DepthExhausted,
    #[error("non-finite value encountered while tracking")]
    NonFinite,
    #[error("eigenvalue modulus {modulus} is off the unit circle")]
    EigenvalueOffCircle { modulus: f64 },
    #[error("matrix is not semisimple within tolerance")]
    NotSemisimple,
    #[error("degenerate symplectic pairing on an eigenplane")]
    DegeneratePairing,
    #[error("classes are not pairwise orthogonal")]
    NonOrthogonalClasses,
    #[error("negative weight {0}")]
    NegativeWeight(f64),
    #[error("form is not symmetric: operator is not in the symplectic Lie algebra (defect {defect:.3e})")]
    AsymmetricForm { defect: f64 },
    #[error("genus mismatch: {0} vs {1}")]
    ContextMismatch(u32, u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Symprep(#[from] SymprepError),
}

/// Immutable configuration for phase tracking and angle extraction.
///
/// Carries the genus, the standard complex structure `J0`, the pairing
/// matrix, the internal tolerance (default 1e−8), the accepted phase step
/// per subdivision interval (default π/2) and the maximum subdivision depth.
#[derive(Clone, Debug)]
pub struct PolarContext {
    genus: u32,
    eps: f64,
    max_depth: u32,
    max_phase_step: f64,
    j0: DMatrix<f64>,
    jp: DMatrix<f64>,
}

impl PolarContext {
    pub fn new(genus: u32) -> PolarContext {
        assert!(genus >= 1, "genus must be at least 1");
        let g = genus as usize;
        let n = 2 * g;
        let mut j0 = DMatrix::zeros(n, n);
        let mut jp = DMatrix::zeros(n, n);
        for k in 0..g {
            // J0: e_k -> f_k, f_k -> -e_k (theta-tamed: theta(v, J0 v) = |v|^2)
            j0[(g + k, k)] = 1.0;
            j0[(k, g + k)] = -1.0;
            jp[(k, g + k)] = 1.0;
            jp[(g + k, k)] = -1.0;
        }
        PolarContext { genus, eps: 1e-8, max_depth: 48, max_phase_step: FRAC_PI_2, j0, jp }
    }

    pub fn with_eps(mut self, eps: f64) -> PolarContext {
        assert!(eps > 0.0);
        self.eps = eps;
        self
    }

    pub fn with_phase_step(mut self, step: f64) -> PolarContext {
        assert!(step > 0.0 && step < PI);
        self.max_phase_step = step;
        self
    }

    pub fn with_max_depth(mut self, depth: u32) -> PolarContext {
        self.max_depth = depth;
        self
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_phase_step(&self) -> f64 {
        self.max_phase_step
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn dim(&self) -> usize {
        2 * self.genus as usize
    }

    fn check_dim(&self, m: &DMatrix<f64>) -> Result<(), CoverError> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(CoverError::DimensionMismatch(m.nrows(), self.dim()));
        }
        Ok(())
    }
}

fn wrap_angle(d: f64) -> f64 {
    let mut w = (d + PI).rem_euclid(TAU) - PI;
    if w == -PI {
        w = PI;
    }
    w
}

/// Orthogonal polar factor via SVD, plus the condition number of the input.
fn polar_factor(m: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64), CoverError> {
    if m.iter().any(|v| !v.is_finite()) {
        return Err(CoverError::NonFinite);
    }
    let svd = m.clone().svd(true, true);
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(CoverError::NonFinite),
    };
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 0.0) {
        return Err(CoverError::NotSymplectic { defect: f64::INFINITY });
    }
    Ok((u * vt, smax / smin))
}

/// Phase of a matrix that is symplectic up to a positive scalar factor.
fn phase_of_scaled(m: &DMatrix<f64>, ctx: &PolarContext) -> Result<f64, CoverError> {
    let gram = m.transpose() * &ctx.jp * m;
    let scale = gram.norm() / ctx.jp.norm();
    let defect = (&gram - &ctx.jp * scale).amax();
    if defect > ctx.eps * (1.0 + gram.norm()) {
        return Err(CoverError::NotSymplectic { defect });
    }
    let (u, cond) = polar_factor(m)?;
    let comm = (&u * &ctx.j0 - &ctx.j0 * &u).amax();
    if comm > ctx.eps * cond.max(1.0) {
        return Err(CoverError::PolarCommutation { defect: comm });
    }
    let g = ctx.genus as usize;
    let c = DMatrix::from_fn(g, g, |r, col| Complex64::new(u[(r, col)], u[(g + r, col)]));
    let det = c.determinant();
    if !det.re.is_finite() || !det.im.is_finite() || det.norm() < 1e-300 {
        return Err(CoverError::NonFinite);
    }
    Ok(det.arg())
}

/// Phase of the polar-unitary determinant of a symplectic matrix, in (−π, π].
///
/// Writes `M = U·P` with `P` symmetric positive definite and `U` orthogonal
/// symplectic; `U` then commutes with `J0` and equals a complex `g×g` unitary
/// matrix `A + iB`; the value is the argument of its determinant.
pub fn polar_phase(m: &DMatrix<f64>, ctx: &PolarContext) -> Result<f64, CoverError> {
    ctx.check_dim(m)?;
    let gram = m.transpose() * &ctx.jp * m;
    let defect = (&gram - &ctx.jp).amax();
    if defect > ctx.eps * (1.0 + m.norm() * m.norm()) {
        return Err(CoverError::NotSymplectic { defect });
    }
    phase_of_scaled(m, ctx)
}

/// One straight transvection segment `t ↦ T_a(t · extent)`, `t ∈ [0, 1]`.
///
/// This is the canonical lift of the transvection `T_a(extent)`: the path
/// fixes every Lagrangian containing `a` pointwise, which pins the lift
/// uniquely among deck translates.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSegment {
    pub class: LatticeVector,
    pub extent: f64,
}

impl PathSegment {
    pub fn new(class: LatticeVector, extent: f64) -> PathSegment {
        PathSegment { class, extent }
    }
}

/// An element of the universal cover: a segment program, the float endpoint
/// of the path, and the total unwrapped polar phase (winding) from `I`.
#[derive(Clone, Debug)]
pub struct LiftedElement {
    genus: u32,
    segments: Vec<PathSegment>,
    endpoint: DMatrix<f64>,
    winding: f64,
}

impl LiftedElement {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn endpoint(&self) -> &DMatrix<f64> {
        &self.endpoint
    }

    pub fn winding(&self) -> f64 {
        self.winding
    }

    /// Covering consistency defect `|e^{iw} − ρ(endpoint)|`.
    pub fn phase_defect(&self, ctx: &PolarContext) -> Result<f64, CoverError> {
        let rho = phase_of_scaled(&self.endpoint, ctx)?;
        let lhs = Complex64::from_polar(1.0, self.winding);
        let rhs = Complex64::from_polar(1.0, rho);
        Ok((lhs - rhs).norm())
    }

    /// Tracks a path given as transvection segments, each implicitly
    /// left-translated by the product of all previous endpoints.
    pub fn from_segments(
        genus: u32,
        segments: Vec<PathSegment>,
        ctx: &PolarContext,
    ) -> Result<LiftedElement, CoverError> {
        if ctx.genus != genus {
            return Err(CoverError::ContextMismatch(genus, ctx.genus));
        }
        let mut tracker = Tracker::new(ctx);
        for segment in &segments {
            tracker.advance(segment, None)?;
        }
        if tracker.endpoint.iter().any(|v| !v.is_finite()) {
            return Err(CoverError::NonFinite);
        }
        Ok(LiftedElement { genus, segments, endpoint: tracker.endpoint, winding: tracker.winding })
    }
}

/// Lifts a braid word: each positive letter becomes the canonical lift of its
/// chain transvection, each negative letter the inverse segment. The winding
/// is tracked with adaptive subdivision so every accepted step changes the
/// phase by less than the configured bound.
pub fn lift_word(
    word: &BraidWord,
    genus: u32,
    ctx: &PolarContext,
) -> Result<LiftedElement, CoverError> {
    let expected = 2 * genus + 2;
    if word.strands() != expected {
        return Err(CoverError::Symprep(SymprepError::StrandGenusMismatch {
            strands: word.strands(),
            genus,
            expected,
        }));
    }
    let chain = chain_classes(genus);
    let mut segments = Vec::with_capacity(word.len());
    for letter in word.letters() {
        let class = chain.class(letter.index)?.clone();
        let extent = match letter.sign {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        };
        segments.push(PathSegment::new(class, extent));
    }
    LiftedElement::from_segments(genus, segments, ctx)
}

/// Group law by path concatenation; the second path is left-translated by the
/// endpoint of the first.
pub fn compose(
    x: &LiftedElement,
    y: &LiftedElement,
    ctx: &PolarContext,
) -> Result<LiftedElement, CoverError> {
    if x.genus != y.genus {
        return Err(CoverError::ContextMismatch(x.genus, y.genus));
    }
    let mut segments = x.segments.clone();
    segments.extend(y.segments.iter().cloned());
    LiftedElement::from_segments(x.genus, segments, ctx)
}

/// Inverse by path reversal: reversed segment order, negated extents.
pub fn invert(x: &LiftedElement, ctx: &PolarContext) -> Result<LiftedElement, CoverError> {
    let segments = x
        .segments
        .iter()
        .rev()
        .map(|s| PathSegment::new(s.class.clone(), -s.extent))
        .collect();
    LiftedElement::from_segments(x.genus, segments, ctx)
}

struct Tracker<'a> {
    ctx: &'a PolarContext,
    /// Renormalized prefix used for phase evaluation (positive scalar factors
    /// do not change the polar phase).
    prefix: DMatrix<f64>,
    /// Plain float product, kept unscaled for the endpoint.
    endpoint: DMatrix<f64>,
    winding: f64,
}

impl<'a> Tracker<'a> {
    fn new(ctx: &'a PolarContext) -> Tracker<'a> {
        let n = ctx.dim();
        Tracker { ctx, prefix: DMatrix::identity(n, n), endpoint: DMatrix::identity(n, n), winding: 0.0 }
    }

    fn advance(
        &mut self,
        segment: &PathSegment,
        mut samples: Option<&mut Vec<(f64, f64)>>,
    ) -> Result<(), CoverError> {
        let n = self.ctx.dim();
        if segment.class.rank() != n {
            return Err(CoverError::DimensionMismatch(segment.class.rank(), n));
        }
        if !segment.extent.is_finite() {
            return Err(CoverError::NonFinite);
        }
        // T_a(c) = I + c * a (a^T J); precompute prefix * (a (a^T J)) so the
        // matrix at parameter t is prefix + (extent * t) * rank_one.
        let a = DMatrix::from_iterator(n, 1, segment.class.to_float());
        let jrow = a.transpose() * &self.ctx.jp;
        let rank_one = &self.prefix * (&a * &jrow);
        let endpoint_rank_one = &self.endpoint * (&a * &jrow);

        let at = |t: f64| &self.prefix + &rank_one * (segment.extent * t);
        let p0 = phase_of_scaled(&at(0.0), self.ctx)?;
        let p1 = phase_of_scaled(&at(1.0), self.ctx)?;
        if let Some(sink) = samples.as_deref_mut() {
            sink.push((0.0, self.winding));
        }
        let delta = unwrap_interval(
            &|t| phase_of_scaled(&at(t), self.ctx),
            0.0,
            p0,
            1.0,
            p1,
            self.ctx.max_depth,
            self.ctx.max_phase_step,
            self.winding,
            &mut samples,
        )?;
        self.winding += delta;
        self.prefix += rank_one * segment.extent;
        let scale = self.prefix.norm() / (n as f64).sqrt();
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(CoverError::NonFinite);
        }
        self.prefix /= scale;
        self.endpoint += endpoint_rank_one * segment.extent;
        Ok(())
    }
}

/// Unwrapped phase change over `[t0, t1]`. An interval is accepted only when
/// splitting it once gives consistent halves, each below the step bound;
/// aliasing a full turn would need a hidden jump past π, which the recursive
/// bisection rules out.
#[allow(clippy::too_many_arguments)]
fn unwrap_interval(
    phase_at: &dyn Fn(f64) -> Result<f64, CoverError>,
    t0: f64,
    p0: f64,
    t1: f64,
    p1: f64,
    depth: u32,
    step: f64,
    base: f64,
    samples: &mut Option<&mut Vec<(f64, f64)>>,
) -> Result<f64, CoverError> {
    if depth == 0 {
        return Err(CoverError::DepthExhausted);
    }
    let tm = 0.5 * (t0 + t1);
    let pm = phase_at(tm)?;
    let da = wrap_angle(pm - p0);
    let db = wrap_angle(p1 - pm);
    let whole = wrap_angle(p1 - p0);
    if da.abs() < step && db.abs() < step && (da + db - whole).abs() < 1e-9 {
        if let Some(sink) = samples.as_deref_mut() {
            sink.push((tm, base + da));
            sink.push((t1, base + da + db));
        }
        return Ok(da + db);
    }
    let left = unwrap_interval(phase_at, t0, p0, tm, pm, depth - 1, step, base, samples)?;
    let right = unwrap_interval(phase_at, tm, pm, t1, p1, depth - 1, step, base + left, samples)?;
    Ok(left + right)
}

/// Diagnostic dump of a tracked path as CSV with columns `t,phase`
/// (per-segment parameter and cumulative unwrapped phase), one segment per
/// block, blocks separated by a blank line.
pub fn trace_path_csv(
    word: &BraidWord,
    genus: u32,
    ctx: &PolarContext,
) -> Result<String, CoverError> {
    let expected = 2 * genus + 2;
    if word.strands() != expected {
        return Err(CoverError::Symprep(SymprepError::StrandGenusMismatch {
            strands: word.strands(),
            genus,
            expected,
        }));
    }
    let chain = chain_classes(genus);
    let mut tracker = Tracker::new(ctx);
    let mut out = String::from("t,phase\n");
    for letter in word.letters() {
        let class = chain.class(letter.index)?.clone();
        let extent = match letter.sign {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        };
        let mut samples = Vec::new();
        tracker.advance(&PathSegment::new(class, extent), Some(&mut samples))?;
        for (t, phase) in samples {
            let _ = writeln!(out, "{t},{phase}");
        }
        out.push('\n');
    }
    Ok(out)
}

/// Row-reduced nullspace of a complex matrix, with full pivoting.
fn complex_nullspace(m: &DMatrix<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut col_of = (0..n).collect::<Vec<usize>>();
    let mut rank = 0;
    for step in 0..n {
        let mut best = (step, step, 0.0);
        for r in step..n {
            for c in step..n {
                let v = a[(r, c)].norm();
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        a.swap_rows(step, best.0);
        a.swap_columns(step, best.1);
        col_of.swap(step, best.1);
        let pivot = a[(step, step)];
        for c in step..n {
            a[(step, c)] /= pivot;
        }
        for r in 0..n {
            if r == step {
                continue;
            }
            let factor = a[(r, step)];
            if factor.norm() == 0.0 {
                continue;
            }
            for c in step..n {
                let sub = factor * a[(step, c)];
                a[(r, c)] -= sub;
            }
        }
        rank = step + 1;
    }
    let mut basis = Vec::with_capacity(n - rank);
    for free in rank..n {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[col_of[free]] = Complex64::new(1.0, 0.0);
        for r in 0..rank {
            v[col_of[r]] = -a[(r, free)];
        }
        basis.push(v);
    }
    basis
}

/// Signature (positive count, negative count) of a small Hermitian matrix via
/// its real symmetric embedding; each Hermitian eigenvalue appears twice there.
fn hermitian_signature(h: &DMatrix<Complex64>, tol: f64) -> Result<(usize, usize), CoverError> {
    let m = h.nrows();
    let embed = DMatrix::from_fn(2 * m, 2 * m, |r, c| {
        let (rr, cc) = (r % m, c % m);
        match (r / m, c / m) {
            (0, 0) | (1, 1) => h[(rr, cc)].re,
            (0, 1) => -h[(rr, cc)].im,
            _ => h[(rr, cc)].im,
        }
    });
    let eig = SymmetricEigen::new(embed);
    let mut pos = 0usize;
    let mut neg = 0usize;
    for &lambda in eig.eigenvalues.iter() {
        if lambda > tol {
            pos += 1;
        } else if lambda < -tol {
            neg += 1;
        } else {
            return Err(CoverError::DegeneratePairing);
        }
    }
    Ok((pos / 2, neg / 2))
}

/// Per-invariant-2-plane rotation angles of an elliptic semisimple symplectic
/// matrix, θ-oriented, each reduced into (−2π, 0]. The multiset (g angles) is
/// conjugation-invariant.
pub fn elliptic_log_angles(m: &SympMatrix, ctx: &PolarContext) -> Result<Vec<f64>, CoverError> {
    if m.genus() != ctx.genus {
        return Err(CoverError::ContextMismatch(m.genus(), ctx.genus));
    }
    let g = ctx.genus as usize;
    let n = 2 * g;
    let mf = m.to_float();
    if mf.iter().any(|v| !v.is_finite()) {
        return Err(CoverError::NonFinite);
    }
    let eigenvalues = mf.clone().complex_eigenvalues();
    let circle_tol = ctx.eps * (1.0 + mf.norm());
    for lambda in eigenvalues.iter() {
        let modulus = lambda.norm();
        if (modulus - 1.0).abs() > circle_tol {
            return Err(CoverError::EigenvalueOffCircle { modulus });
        }
    }

    let cluster_radius = ctx.eps.sqrt();
    let mc = DMatrix::from_fn(n, n, |r, c| Complex64::new(mf[(r, c)], 0.0));
    let rank_tol = 1e-8 * mf.amax().max(1.0);
    let mut used = vec![false; n];
    let mut angles: Vec<f64> = Vec::with_capacity(g);
    for start in 0..n {
        if used[start] {
            continue;
        }
        let lambda = eigenvalues[start];
        let cluster: Vec<usize> = (0..n)
            .filter(|&j| !used[j] && (eigenvalues[j] - lambda).norm() <= cluster_radius)
            .collect();
        let count = cluster.len();

        if lambda.im.abs() <= cluster_radius {
            // real eigenvalue ±1: each 2-plane rotates by 0 or by ±π ≡ −π
            for &j in &cluster {
                used[j] = true;
            }
            if count % 2 != 0 {
                return Err(CoverError::NotSemisimple);
            }
            let center = if lambda.re > 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            };
            let shifted = &mc - DMatrix::from_diagonal_element(n, n, center);
            let space = complex_nullspace(&shifted, rank_tol);
            if space.len() != count {
                return Err(CoverError::NotSemisimple);
            }
            let angle = if lambda.re > 0.0 { 0.0 } else { -PI };
            angles.extend(std::iter::repeat(angle).take(count / 2));
        } else {
            // complex pair: handle the upper-half-plane representative and
            // consume the conjugates along with it
            let conjugate: Vec<usize> = (0..n)
                .filter(|&j| !used[j] && (eigenvalues[j] - lambda.conj()).norm() <= cluster_radius)
                .collect();
            for &j in cluster.iter().chain(&conjugate) {
                used[j] = true;
            }
            if conjugate.len() != count {
                return Err(CoverError::NotSemisimple);
            }
            let upper = if lambda.im > 0.0 { lambda } else { lambda.conj() };
            let beta = upper.arg(); // in (0, π)
            let shifted = &mc - DMatrix::from_diagonal_element(n, n, upper);
            let space = complex_nullspace(&shifted, rank_tol);
            if space.len() != count {
                return Err(CoverError::NotSemisimple);
            }
            // Krein form h(z, w) = i · θ_C(z, w̄) on the eigenspace; for
            // z = u + iv one has h(z, z) = 2 θ(u, v), so positive vectors are
            // θ-positively oriented planes rotating by −β and negative ones
            // rotate by +β ≡ β − 2π.
            let h = DMatrix::from_fn(count, count, |r, c| {
                let mut acc = Complex64::new(0.0, 0.0);
                for row in 0..n {
                    for col in 0..n {
                        let j = ctx.jp[(row, col)];
                        if j != 0.0 {
                            acc += space[r][row] * space[c][col].conj() * j;
                        }
                    }
                }
                acc * Complex64::new(0.0, 1.0)
            });
            let scale = h.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1e-300);
            let (pos, neg) = hermitian_signature(&h, 1e-8 * scale)?;
            if pos + neg != count {
                return Err(CoverError::DegeneratePairing);
            }
            angles.extend(std::iter::repeat(-beta).take(pos));
            angles.extend(std::iter::repeat(beta - TAU).take(neg));
        }
    }
    if angles.len() != g {
        return Err(CoverError::NotSemisimple);
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(angles)
}

/// Displacement angle in the elliptic eigenphase form: the mean of the g
/// oriented plane angles, in (−2π, 0].
pub fn displacement_angle_elliptic(m: &SympMatrix, ctx: &PolarContext) -> Result<f64, CoverError> {
    let angles = elliptic_log_angles(m, ctx)?;
    Ok(angles.iter().sum::<f64>() / ctx.genus as f64)
}

/// Nilpotent Lie-algebra element `x = Σ s_i x_{a_i}` with `x_a(v) = θ(a, v) a`,
/// for pairwise θ-orthogonal classes. Then `x² = 0` and `Exp(x)` is the
/// product of the commuting transvections `T_{a_i}(s_i)`.
#[derive(Clone, Debug)]
pub struct NilpotentLog {
    genus: u32,
    terms: Vec<(LatticeVector, f64)>,
}

impl NilpotentLog {
    pub fn new(genus: u32, terms: Vec<(LatticeVector, f64)>) -> Result<NilpotentLog, CoverError> {
        let n = 2 * genus as usize;
        for (class, weight) in &terms {
            if class.rank() != n {
                return Err(CoverError::DimensionMismatch(class.rank(), n));
            }
            if !weight.is_finite() || *weight < 0.0 {
                return Err(CoverError::NegativeWeight(*weight));
            }
        }
        for (i, (a, _)) in terms.iter().enumerate() {
            for (b, _) in &terms[i + 1..] {
                if !crate::symprep::pairing(a, b)?.eq(&num_bigint::BigInt::from(0)) {
                    return Err(CoverError::NonOrthogonalClasses);
                }
            }
        }
        Ok(NilpotentLog { genus, terms })
    }

    /// Weight-1 terms, one per right twist.
    pub fn unit_twists(genus: u32, classes: Vec<LatticeVector>) -> Result<NilpotentLog, CoverError> {
        NilpotentLog::new(genus, classes.into_iter().map(|c| (c, 1.0)).collect())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn terms(&self) -> &[(LatticeVector, f64)] {
        &self.terms
    }

    /// The operator `Σ s_i a_i (a_i^T J)` as a float matrix.
    pub fn operator(&self) -> DMatrix<f64> {
        let n = 2 * self.genus as usize;
        let jp = PolarContext::new(self.genus).jp;
        let mut x = DMatrix::zeros(n, n);
        for (class, weight) in &self.terms {
            let a = DMatrix::from_iterator(n, 1, class.to_float());
            let jrow = a.transpose() * &jp;
            x += (a * jrow) * *weight;
        }
        x
    }
}

/// Displacement angle in the trace form: the trace of the Gram matrix of
/// `γ_x(u, v) = θ(u, x v)` in the standard basis, divided by 2g. Always ≤ 0
/// for right twists. Note the value is basis-dependent, as any trace of a
/// bilinear form is; the standard basis is fixed here.
pub fn displacement_angle_trace(x: &NilpotentLog, ctx: &PolarContext) -> Result<f64, CoverError> {
    if x.genus() != ctx.genus {
        return Err(CoverError::ContextMismatch(x.genus(), ctx.genus));
    }
    let gram = &ctx.jp * x.operator();
    Ok(gram.trace() / (2.0 * ctx.genus as f64))
}

/// Membership in the non-positive cone: true iff the symmetric form
/// `γ_x(u, v) = θ(u, x v)` is negative semidefinite. Errors when the form is
/// not symmetric, i.e. `x` is not in the symplectic Lie algebra.
pub fn in_nonpositive_cone(x: &DMatrix<f64>, ctx: &PolarContext) -> Result<bool, CoverError> {
    ctx.check_dim(x)?;
    let gram = &ctx.jp * x;
    let defect = (&gram - gram.transpose()).amax();
    if defect > ctx.eps * (1.0 + gram.norm()) {
        return Err(CoverError::AsymmetricForm { defect });
    }
    let sym = (&gram + gram.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    Ok(eig.eigenvalues.iter().all(|&l| l <= ctx.eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::{h_word, hbar_word, BraidWord};
    use crate::symprep::sigma;

    fn ctx(g: u32) -> PolarContext {
        PolarContext::new(g)
    }

    #[test]
    fn polar_phase_reference_points() {
        let c = ctx(1);
        let id = DMatrix::identity(2, 2);
        assert!(polar_phase(&id, &c).unwrap().abs() < 1e-12);

        let minus = -DMatrix::identity(2, 2);
        assert!((polar_phase(&minus, &c).unwrap() - PI).abs() < 1e-12);

        let sh = sigma(&h_word(1), 1).unwrap().to_float();
        assert!((polar_phase(&sh, &c).unwrap() + FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn polar_phase_rejects_non_symplectic() {
        let c = ctx(1);
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert!(matches!(polar_phase(&m, &c), Err(CoverError::NotSymplectic { .. })));
    }

    #[test]
    fn empty_word_lifts_to_identity() {
        let c = ctx(1);
        let x = lift_word(&BraidWord::identity(4).unwrap(), 1, &c).unwrap();
        assert!(x.winding().abs() < 1e-12);
        assert!((x.endpoint() - DMatrix::identity(2, 2)).amax() < 1e-12);
    }

    #[test]
    fn involution_word_winds_minus_pi() {
        let c = ctx(1);
        let hh = h_word(1).concat(&hbar_word(1)).unwrap();
        let x = lift_word(&hh, 1, &c).unwrap();
        assert!((x.winding() + PI).abs() < 1e-9, "winding = {}", x.winding());
        assert!((x.endpoint() + DMatrix::identity(2, 2)).amax() < 1e-9);
        assert!(x.phase_defect(&c).unwrap() < 1e-8);
    }

    #[test]
    fn full_twist_winds_minus_two_pi() {
        let c = ctx(1);
        let x = lift_word(&h_word(1).repeat(4), 1, &c).unwrap();
        assert!((x.winding() + TAU).abs() < 1e-9);
        assert!((x.endpoint() - DMatrix::identity(2, 2)).amax() < 1e-9);
    }

    #[test]
    fn compose_matches_concatenated_word() {
        let c = ctx(1);
        let xh = lift_word(&h_word(1), 1, &c).unwrap();
        let xhb = lift_word(&hbar_word(1), 1, &c).unwrap();
        let composed = compose(&xh, &xhb, &c).unwrap();
        let direct = lift_word(&h_word(1).concat(&hbar_word(1)).unwrap(), 1, &c).unwrap();
        assert!((composed.winding() - direct.winding()).abs() < 1e-8);
        assert!((composed.endpoint() - direct.endpoint()).amax() < 1e-9);
    }

    #[test]
    fn invert_negates_winding() {
        let c = ctx(2);
        let w = BraidWord::parse("t1 t2 t3 t4 t5 t1 T3", 6).unwrap();
        let x = lift_word(&w, 2, &c).unwrap();
        let xi = invert(&x, &c).unwrap();
        assert!((xi.winding() + x.winding()).abs() < 1e-8);
        let loop_back = compose(&x, &xi, &c).unwrap();
        assert!(loop_back.winding().abs() < 1e-8);
        assert!((loop_back.endpoint() - DMatrix::identity(4, 4)).amax() < 1e-8);
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let c1 = ctx(1);
        let c2 = ctx(2);
        let x = lift_word(&h_word(1), 1, &c1).unwrap();
        let y = lift_word(&h_word(2), 2, &c2).unwrap();
        assert!(matches!(compose(&x, &y, &c1), Err(CoverError::ContextMismatch(1, 2))));
        assert!(matches!(lift_word(&h_word(2), 2, &c1), Err(CoverError::ContextMismatch(2, 1))));
    }

    #[test]
    fn elliptic_angles_reference_points() {
        let c = ctx(1);
        let angles = elliptic_log_angles(&SympMatrix::identity(1), &c).unwrap();
        assert_eq!(angles.len(), 1);
        assert!(angles[0].abs() < 1e-12);

        let minus = SympMatrix::identity(1).neg();
        let angles = elliptic_log_angles(&minus, &c).unwrap();
        assert!((angles[0] + PI).abs() < 1e-12);

        let sh = sigma(&h_word(1), 1).unwrap();
        let angles = elliptic_log_angles(&sh, &c).unwrap();
        assert!((angles[0] + FRAC_PI_2).abs() < 1e-12);

        let c3 = ctx(3);
        let minus3 = SympMatrix::identity(3).neg();
        let angles = elliptic_log_angles(&minus3, &c3).unwrap();
        assert_eq!(angles.len(), 3);
        assert!(angles.iter().all(|a| (a + PI).abs() < 1e-12));
        assert!((displacement_angle_elliptic(&minus3, &c3).unwrap() + PI).abs() < 1e-12);
    }

    #[test]
    fn parabolic_elements_are_rejected() {
        let c = ctx(1);
        let t = SympMatrix::transvection(&LatticeVector::basis_e(1, 1), 1);
        assert!(matches!(elliptic_log_angles(&t, &c), Err(CoverError::NotSemisimple)));
    }

    #[test]
    fn hyperbolic_elements_are_rejected() {
        let c = ctx(1);
        // T_{e1}(1) T_{f1}(-1) has trace 3: real spectrum off the circle
        let m = SympMatrix::transvection(&LatticeVector::basis_e(1, 1), 1)
            .mul(&SympMatrix::transvection(&LatticeVector::basis_f(1, 1), -1))
            .unwrap();
        assert!(matches!(
            elliptic_log_angles(&m, &c),
            Err(CoverError::EigenvalueOffCircle { .. })
        ));
    }

    #[test]
    fn trace_angle_values() {
        let c = ctx(1);
        let e1 = LatticeVector::basis_e(1, 1);
        let x = NilpotentLog::unit_twists(1, vec![e1.clone()]).unwrap();
        assert!((displacement_angle_trace(&x, &c).unwrap() + 0.5).abs() < 1e-12);

        let x2 = NilpotentLog::new(1, vec![(e1.clone(), 2.0)]).unwrap();
        assert!((displacement_angle_trace(&x2, &c).unwrap() + 1.0).abs() < 1e-12);

        let x0 = NilpotentLog::new(1, vec![(e1.clone(), 0.0)]).unwrap();
        assert!(displacement_angle_trace(&x0, &c).unwrap().abs() < 1e-12);

        let f1 = LatticeVector::basis_f(1, 1);
        assert!(matches!(
            NilpotentLog::unit_twists(1, vec![e1.clone(), f1]),
            Err(CoverError::NonOrthogonalClasses)
        ));
        assert!(matches!(
            NilpotentLog::new(1, vec![(e1, -1.0)]),
            Err(CoverError::NegativeWeight(_))
        ));
    }

    #[test]
    fn nilpotent_square_vanishes() {
        let g = 2;
        let chain = chain_classes(g);
        let x = NilpotentLog::unit_twists(
            g,
            vec![chain.class(1).unwrap().clone(), chain.class(5).unwrap().clone()],
        )
        .unwrap();
        let op = x.operator();
        assert!((&op * &op).amax() < 1e-12);
    }

    #[test]
    fn cone_membership() {
        let c = ctx(1);
        let e1 = LatticeVector::basis_e(1, 1);
        let right = NilpotentLog::unit_twists(1, vec![e1.clone()]).unwrap().operator();
        assert!(in_nonpositive_cone(&right, &c).unwrap());
        assert!(in_nonpositive_cone(&DMatrix::zeros(2, 2), &c).unwrap());
        assert!(!in_nonpositive_cone(&(-right), &c).unwrap());

        let not_sp = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            in_nonpositive_cone(&not_sp, &c),
            Err(CoverError::AsymmetricForm { .. })
        ));
    }

    #[test]
    fn halving_the_step_is_stable() {
        let g = 2;
        let base = ctx(g);
        let fine = ctx(g).with_phase_step(FRAC_PI_2 / 2.0);
        let w = h_word(g).concat(&hbar_word(g)).unwrap();
        let a = lift_word(&w, g, &base).unwrap();
        let b = lift_word(&w, g, &fine).unwrap();
        assert!((a.winding() - b.winding()).abs() < 1e-8);
    }

    #[test]
    fn csv_trace_shape() {
        let c = ctx(1);
        let out = trace_path_csv(&BraidWord::parse("t1 t2", 4).unwrap(), 1, &c).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("t,phase"));
        // two blocks separated by a blank line, each starting at t=0
        let blocks: Vec<&str> = out.trim_start_matches("t,phase\n").split("\n\n").collect();
        assert_eq!(blocks.iter().filter(|b| !b.trim().is_empty()).count(), 2);
        for block in blocks.iter().filter(|b| !b.trim().is_empty()) {
            assert!(block.starts_with("0,"));
        }
    }
}
