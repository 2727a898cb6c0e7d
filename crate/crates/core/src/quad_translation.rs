//! The translation-restricted quadratic of §3.1 and its failure of homogeneity (D2).
//!
//! The unrestricted quadratic is
//! `Q(y, x) = a0 + Σ a_i x_i + Σ b_k y_k + ½ΣΣ a_ij x_i x_j + ½ΣΣ b_kl y_k y_l + ΣΣ c_ik x_i y_k`.
//! The translation restrictions tie the coefficients to a direction `(g_y, g_x)`;
//! following Atkinson and Tsionas they are solved for the pivot coefficients
//! `α_n`, `α_in`, `α_nn`, `β_km`, `β_mm`. Everything else is free.
//!
//! Degrees of freedom: `1 + (n-1) + m + n(n-1)/2 + m(m-1)/2 + nm`. With `n = 1` the
//! free input blocks are empty and `α_1`, `α_11` are fully determined; with `m = 1`
//! the free output block is empty and `β_11` is determined by `γ` alone.

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::order::{Bundle, Direction};
use crate::sampling::Sampler;
use crate::technology::dot;

/// Directions scale factors scanned by the homogeneity counterexample search.
pub const HOMOGENEITY_SCALES: [f64; 3] = crate::ddf::D2_SCALES;
/// A deviation above this witnesses the failure of D2.
pub const HOMOGENEITY_WITNESS_TOL: f64 = 1e-3;
/// Step used when checking the translation identity.
pub const TRANSLATION_STEP: f64 = 0.3;

/// The free (unsubstituted) coefficients of the quadratic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeQuadraticParams {
    /// `α_0`.
    pub alpha0: f64,
    /// `α_1 .. α_{n-1}`.
    pub alpha: Vec<f64>,
    /// `β_1 .. β_m`.
    pub beta: Vec<f64>,
    /// Symmetric `(n-1) x (n-1)` block `α_ij`, `i, j <= n-1`.
    pub alpha_mat: Vec<Vec<f64>>,
    /// Symmetric `(m-1) x (m-1)` block `β_kl`, `k, l <= m-1`.
    pub beta_mat: Vec<Vec<f64>>,
    /// `n x m` cross coefficients `γ_ik`.
    pub gamma: Vec<Vec<f64>>,
}

fn check_matrix(name: &'static str, mat: &[Vec<f64>], rows: usize, cols: usize) -> Result<()> {
    check_len(name, rows, mat.len())?;
    for row in mat {
        check_len(name, cols, row.len())?;
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("{name} has a non-finite entry")));
        }
    }
    Ok(())
}

fn check_symmetric(name: &str, mat: &[Vec<f64>]) -> Result<()> {
    for (i, row) in mat.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v != mat[j][i] {
                return Err(Error::InvalidInput(format!("{name} is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

fn mat_vec(mat: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    mat.iter().map(|row| dot(row, v)).collect()
}

fn quad_form(mat: &[Vec<f64>], u: &[f64]) -> f64 {
    dot(u, &mat_vec(mat, u))
}

// Fills both triangles, so index loops are clearer than iterators here.
#[allow(clippy::needless_range_loop)]
fn symmetric_random(s: &mut Sampler, k: usize) -> Vec<Vec<f64>> {
    let mut mat = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = s.uniform(-1.0, 1.0);
            mat[i][j] = v;
            mat[j][i] = v;
        }
    }
    mat
}

impl FreeQuadraticParams {
    pub fn new(
        alpha0: f64,
        alpha: Vec<f64>,
        beta: Vec<f64>,
        alpha_mat: Vec<Vec<f64>>,
        beta_mat: Vec<Vec<f64>>,
        gamma: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let p = Self {
            alpha0,
            alpha,
            beta,
            alpha_mat,
            beta_mat,
            gamma,
        };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let (m, n) = (self.m(), self.n());
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "quadratic needs m >= 1 outputs and n >= 1 inputs".into(),
            ));
        }
        if !self.alpha0.is_finite() || self.alpha.iter().chain(&self.beta).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("linear coefficients must be finite".into()));
        }
        check_len("alpha (first n-1 input coefficients)", n - 1, self.alpha.len())?;
        check_matrix("alpha_mat", &self.alpha_mat, n - 1, n - 1)?;
        check_matrix("beta_mat", &self.beta_mat, m - 1, m - 1)?;
        check_matrix("gamma", &self.gamma, n, m)?;
        check_symmetric("alpha_mat", &self.alpha_mat)?;
        check_symmetric("beta_mat", &self.beta_mat)
    }

    /// Every free coefficient uniform in `[-1, 1]` from a seeded generator.
    pub fn random(m: usize, n: usize, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "quadratic needs m >= 1 outputs and n >= 1 inputs".into(),
            ));
        }
        let mut s = Sampler::new(seed);
        let alpha0 = s.uniform(-1.0, 1.0);
        let alpha = s.vector(n - 1, -1.0, 1.0);
        let beta = s.vector(m, -1.0, 1.0);
        let alpha_mat = symmetric_random(&mut s, n - 1);
        let beta_mat = symmetric_random(&mut s, m - 1);
        let gamma = (0..n).map(|_| s.vector(m, -1.0, 1.0)).collect();
        Self::new(alpha0, alpha, beta, alpha_mat, beta_mat, gamma)
    }

    /// Number of outputs.
    pub fn m(&self) -> usize {
        self.beta.len()
    }

    /// Number of inputs (`alpha` holds only the first `n - 1`).
    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    /// Same coefficients with linear, quadratic and cross terms other than `β` zeroed.
    pub fn linear_only(m: usize, n: usize, alpha0: f64, alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        let zeros = |k: usize, l: usize| vec![vec![0.0; l]; k];
        Self::new(
            alpha0,
            alpha,
            beta,
            zeros(n.saturating_sub(1), n.saturating_sub(1)),
            zeros(m.saturating_sub(1), m.saturating_sub(1)),
            zeros(n, m),
        )
    }
}

/// Free coefficients plus the pivot coefficients solved against `direction`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictedQuadraticParams {
    pub free: FreeQuadraticParams,
    pub alpha_n: f64,
    /// `α_in = α_ni` for `i <= n-1`.
    pub alpha_in: Vec<f64>,
    pub alpha_nn: f64,
    /// `β_km = β_mk` for `k <= m-1`.
    pub beta_km: Vec<f64>,
    pub beta_mm: f64,
    pub direction: Direction,
}

/// Residuals of the three translation-restriction families.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestrictionResiduals {
    /// `Σ_k γ_ik g_yk − Σ_j α_ij g_xj` for each input `i`.
    pub input_cross: Vec<f64>,
    /// `Σ_k β_k g_yk − Σ_i α_i g_xi + 1`.
    pub linear: f64,
    /// `Σ_l β_kl g_yl − Σ_i γ_ik g_xi` for each output `k`.
    pub output_cross: Vec<f64>,
}

impl RestrictionResiduals {
    pub fn max_abs(&self) -> f64 {
        self.input_cross
            .iter()
            .chain(&self.output_cross)
            .chain(std::iter::once(&self.linear))
            .fold(0.0, |acc, r| acc.max(r.abs()))
    }
}

/// Solves the translation restrictions for `α_n`, `α_in`, `α_nn`, `β_km`, `β_mm`
/// using the five displayed substitution formulas of §3.1.
pub fn restrict_parameters(free: &FreeQuadraticParams, dir: &Direction) -> Result<RestrictedQuadraticParams> {
    free.check()?;
    let (m, n) = (free.m(), free.n());
    check_len("restrict_parameters (g_y)", m, dir.m())?;
    check_len("restrict_parameters (g_x)", n, dir.n())?;
    let (gy, gx) = (dir.gy(), dir.gx());
    let (gxn, gym) = (gx[n - 1], gy[m - 1]);
    if gxn <= 0.0 {
        return Err(Error::Precondition(format!(
            "g_xn = g_x[{}] must be positive, got {gxn}",
            n - 1
        )));
    }
    if gym <= 0.0 {
        return Err(Error::Precondition(format!(
            "g_ym = g_y[{}] must be positive, got {gym}",
            m - 1
        )));
    }
    let gx_head = &gx[..n - 1];
    let gy_head = &gy[..m - 1];

    let alpha_n = (dot(&free.beta, gy) - dot(&free.alpha, gx_head) + 1.0) / gxn;
    // Σ_k γ_jk g_yk − Σ_p α_jp g_xp for j <= n-1
    let input_slack: Vec<f64> = (0..n - 1)
        .map(|j| dot(&free.gamma[j], gy) - dot(&free.alpha_mat[j], gx_head))
        .collect();
    let alpha_in: Vec<f64> = input_slack.iter().map(|s| s / gxn).collect();
    let alpha_nn = (dot(&free.gamma[n - 1], gy) - dot(&input_slack, gx_head) / gxn) / gxn;

    // Σ_i γ_ik g_xi for every k
    let gamma_gx: Vec<f64> = (0..m).map(|k| (0..n).map(|i| free.gamma[i][k] * gx[i]).sum()).collect();
    let output_slack: Vec<f64> = (0..m - 1)
        .map(|l| gamma_gx[l] - dot(&free.beta_mat[l], gy_head))
        .collect();
    let beta_km: Vec<f64> = output_slack.iter().map(|s| s / gym).collect();
    let beta_mm = (gamma_gx[m - 1] - dot(&output_slack, gy_head) / gym) / gym;

    Ok(RestrictedQuadraticParams {
        free: free.clone(),
        alpha_n,
        alpha_in,
        alpha_nn,
        beta_km,
        beta_mm,
        direction: dir.clone(),
    })
}

impl RestrictedQuadraticParams {
    pub fn m(&self) -> usize {
        self.free.m()
    }

    pub fn n(&self) -> usize {
        self.free.n()
    }

    /// All `n` input linear coefficients.
    pub fn full_alpha(&self) -> Vec<f64> {
        let mut a = self.free.alpha.clone();
        a.push(self.alpha_n);
        a
    }

    /// The full symmetric `n x n` matrix `α_ij`.
    pub fn full_alpha_mat(&self) -> Vec<Vec<f64>> {
        bordered(&self.free.alpha_mat, &self.alpha_in, self.alpha_nn)
    }

    /// The full symmetric `m x m` matrix `β_kl`.
    pub fn full_beta_mat(&self) -> Vec<Vec<f64>> {
        bordered(&self.free.beta_mat, &self.beta_km, self.beta_mm)
    }

    pub fn residuals(&self) -> RestrictionResiduals {
        let (gy, gx) = (self.direction.gy(), self.direction.gx());
        let amat = self.full_alpha_mat();
        let bmat = self.full_beta_mat();
        let gamma = &self.free.gamma;
        let input_cross = (0..self.n()).map(|i| dot(&gamma[i], gy) - dot(&amat[i], gx)).collect();
        let linear = dot(&self.free.beta, gy) - dot(&self.full_alpha(), gx) + 1.0;
        let output_cross = (0..self.m())
            .map(|k| dot(&bmat[k], gy) - (0..self.n()).map(|i| gamma[i][k] * gx[i]).sum::<f64>())
            .collect();
        RestrictionResiduals {
            input_cross,
            linear,
            output_cross,
        }
    }

    fn check_dims(&self, y: &[f64], x: &[f64]) -> Result<()> {
        check_len("eval_q (outputs)", self.m(), y.len())?;
        check_len("eval_q (inputs)", self.n(), x.len())
    }

    /// The plain quadratic `Q(y, x)` with the substituted coefficient set.
    /// Accepts any real vectors, so translated bundles may leave the orthant.
    pub fn eval_slices(&self, y: &[f64], x: &[f64]) -> Result<f64> {
        self.check_dims(y, x)?;
        let free = &self.free;
        let cross: f64 = x.iter().zip(&free.gamma).map(|(xi, row)| xi * dot(row, y)).sum();
        Ok(free.alpha0
            + dot(&self.full_alpha(), x)
            + dot(&free.beta, y)
            + 0.5 * quad_form(&self.full_alpha_mat(), x)
            + 0.5 * quad_form(&self.full_beta_mat(), y)
            + cross)
    }

    /// The long displayed expression `Q(y, x; g_y, g_x)` of §3.1, written in the
    /// translation-invariant coordinates. The `[1/2]^1(i=j)` weights are
    /// implemented as halved diagonal terms over the upper triangle.
    pub fn eval_displayed_slices(&self, y: &[f64], x: &[f64]) -> Result<f64> {
        self.check_dims(y, x)?;
        let free = &self.free;
        let (m, n) = (self.m(), self.n());
        let (gy, gx) = (self.direction.gy(), self.direction.gx());
        let (gxn, gym) = (gx[n - 1], gy[m - 1]);
        let (xn, ym) = (x[n - 1], y[m - 1]);

        let u: Vec<f64> = (0..n - 1).map(|i| x[i] - gx[i] / gxn * xn).collect();
        let v: Vec<f64> = (0..m).map(|k| y[k] + gy[k] / gxn * xn).collect();
        let w: Vec<f64> = (0..m - 1).map(|k| y[k] - gy[k] / gym * ym).collect();
        let s: Vec<f64> = (0..n).map(|i| x[i] + gx[i] / gym * ym).collect();

        let upper_triangle = |mat: &[Vec<f64>], z: &[f64]| -> f64 {
            let mut total = 0.0;
            for i in 0..z.len() {
                for j in i..z.len() {
                    let weight = if i == j { 0.5 } else { 1.0 };
                    total += weight * mat[i][j] * z[i] * z[j];
                }
            }
            total
        };

        let mut q = free.alpha0 + dot(&free.alpha, &u) + dot(&free.beta, &v) + xn / gxn;
        q += upper_triangle(&free.alpha_mat, &u);
        q += upper_triangle(&free.beta_mat, &w);
        let mut gamma_gg = 0.0;
        for i in 0..n {
            q += s[i] * dot(&free.gamma[i], &v);
            gamma_gg += gx[i] * dot(&free.gamma[i], gy);
        }
        let t = xn / gxn + ym / gym;
        Ok(q - 0.5 * gamma_gg * t * t)
    }

    /// `|Q(y + α g_y, x − α g_x) − (Q(y, x) − α)|`.
    pub fn translation_residual(&self, bundle: &Bundle, alpha: f64) -> Result<f64> {
        let (gy, gx) = (self.direction.gy(), self.direction.gx());
        check_len("translation_residual (outputs)", self.m(), bundle.m())?;
        check_len("translation_residual (inputs)", self.n(), bundle.n())?;
        let y: Vec<f64> = bundle.y().iter().zip(gy).map(|(y, g)| y + alpha * g).collect();
        let x: Vec<f64> = bundle.x().iter().zip(gx).map(|(x, g)| x - alpha * g).collect();
        let shifted = self.eval_slices(&y, &x)?;
        let base = self.eval_slices(bundle.y(), bundle.x())?;
        Ok((shifted - (base - alpha)).abs())
    }
}

fn bordered(block: &[Vec<f64>], border: &[f64], corner: f64) -> Vec<Vec<f64>> {
    let k = border.len() + 1;
    let mut mat = vec![vec![0.0; k]; k];
    for (i, row) in block.iter().enumerate() {
        mat[i][..k - 1].copy_from_slice(row);
        mat[i][k - 1] = border[i];
        mat[k - 1][i] = border[i];
    }
    mat[k - 1][k - 1] = corner;
    mat
}

/// Both evaluation paths of `Q(y, x; g_y, g_x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QEvaluation {
    /// Plain quadratic with substituted coefficients.
    pub substituted: f64,
    /// The displayed restricted expression.
    pub displayed: f64,
}

impl QEvaluation {
    pub fn gap(&self) -> f64 {
        (self.substituted - self.displayed).abs()
    }
}

/// Evaluates `Q` at a bundle (the substituted-coefficient path).
pub fn eval_q(p: &RestrictedQuadraticParams, bundle: &Bundle) -> Result<f64> {
    p.eval_slices(bundle.y(), bundle.x())
}

/// Evaluates `Q` along both code paths for cross-validation.
pub fn eval_q_both(p: &RestrictedQuadraticParams, bundle: &Bundle) -> Result<QEvaluation> {
    Ok(QEvaluation {
        substituted: p.eval_slices(bundle.y(), bundle.x())?,
        displayed: p.eval_displayed_slices(bundle.y(), bundle.x())?,
    })
}

/// `|ψ Q_{ψg}(y, x) − Q_g(y, x)|`, each `Q` restricted against its own direction.
/// A DTDF would give zero (property D2).
pub fn homogeneity_deviation(free: &FreeQuadraticParams, bundle: &Bundle, dir: &Direction, psi: f64) -> Result<f64> {
    let scaled = dir.scaled(psi)?;
    let base = eval_q(&restrict_parameters(free, dir)?, bundle)?;
    let rescaled = eval_q(&restrict_parameters(free, &scaled)?, bundle)?;
    Ok((psi * rescaled - base).abs())
}

/// A D2 violation of the restricted quadratic together with the D1 checks on
/// the same instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneityWitness {
    pub seed: u64,
    pub free: FreeQuadraticParams,
    pub bundle: Bundle,
    pub direction: Direction,
    /// Scale factor with the largest deviation.
    pub psi: f64,
    /// Deviation for each scale factor in [`HOMOGENEITY_SCALES`].
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    /// Largest translation-restriction residual over `g` and every `ψ g`.
    pub restriction_residual: f64,
    /// `|Q(z + α g̃) − Q(z) + α|` at `α = TRANSLATION_STEP`, worst over `g` and every `ψ g`.
    pub translation_residual: f64,
    /// Largest gap between the two evaluation paths.
    pub dual_path_gap: f64,
}

impl HomogeneityWitness {
    pub fn violates_d2(&self) -> bool {
        self.max_deviation > HOMOGENEITY_WITNESS_TOL
    }
}

/// Scans `ψ ∈ HOMOGENEITY_SCALES` for the instance `(free, bundle, dir)`.
pub fn homogeneity_witness(
    seed: u64,
    free: &FreeQuadraticParams,
    bundle: &Bundle,
    dir: &Direction,
) -> Result<HomogeneityWitness> {
    let mut deviations = Vec::with_capacity(HOMOGENEITY_SCALES.len());
    let base = restrict_parameters(free, dir)?;
    let mut restriction_residual = base.residuals().max_abs();
    let mut translation_residual = base.translation_residual(bundle, TRANSLATION_STEP)?;
    let mut dual_path_gap = eval_q_both(&base, bundle)?.gap();
    let (mut best_psi, mut best) = (HOMOGENEITY_SCALES[0], f64::NEG_INFINITY);
    for psi in HOMOGENEITY_SCALES {
        let scaled = restrict_parameters(free, &dir.scaled(psi)?)?;
        restriction_residual = restriction_residual.max(scaled.residuals().max_abs());
        translation_residual = translation_residual.max(scaled.translation_residual(bundle, TRANSLATION_STEP)?);
        dual_path_gap = dual_path_gap.max(eval_q_both(&scaled, bundle)?.gap());
        let dev = homogeneity_deviation(free, bundle, dir, psi)?;
        if dev > best {
            (best_psi, best) = (psi, dev);
        }
        deviations.push(dev);
    }
    Ok(HomogeneityWitness {
        seed,
        free: free.clone(),
        bundle: bundle.clone(),
        direction: dir.clone(),
        psi: best_psi,
        deviations,
        max_deviation: best,
        restriction_residual,
        translation_residual,
        dual_path_gap,
    })
}

/// The canonical instance of the D2 search: random free parameters from `seed`,
/// all-ones bundle and all-ones direction.
pub fn seeded_homogeneity_witness(m: usize, n: usize, seed: u64) -> Result<HomogeneityWitness> {
    let free = FreeQuadraticParams::random(m, n, seed)?;
    let bundle = Bundle::new(vec![1.0; m], vec![1.0; n])?;
    let dir = Direction::new(vec![1.0; m], vec![1.0; n])?;
    homogeneity_witness(seed, &free, &bundle, &dir)
}
