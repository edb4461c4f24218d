//! Validated fusion ring data: fusion tensor, conjugation, quantum
//! dimensions and the global character table of the Verlinde algebra.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::chars::{CharacterTable, Config};
use crate::error::{Error, Result};
use crate::set::MAX_PRIMARIES;

/// Raw, unvalidated input for a fusion ring.
#[derive(Debug, Clone)]
pub struct RawRing {
    pub n: usize,
    /// Dense n^3 tensor, indexed `p*n*n + q*n + r`.
    pub fusion: Vec<i64>,
    pub labels: Option<Vec<String>>,
    /// Row-major n^2 complex matrix.
    pub smatrix: Option<Vec<Complex64>>,
    pub weights: Option<Vec<Rational64>>,
}

/// A fully validated fusion ring with all derived data precomputed.
///
/// Everything is immutable after construction, so values can be shared
/// freely across threads.
#[derive(Debug, Clone)]
pub struct FusionRing {
    n: usize,
    fusion: Vec<u32>,
    labels: Vec<String>,
    conj: Vec<usize>,
    dims: Vec<f64>,
    total_dim_sq: f64,
    smatrix: Option<Vec<Complex64>>,
    weights: Option<Vec<Rational64>>,
    chars: CharacterTable,
    modular_compatible: bool,
    warnings: Vec<String>,
    tolerance: f64,
}

impl FusionRing {
    /// Validates the raw data and precomputes conjugation, quantum
    /// dimensions and the global character table.
    pub fn validate(raw: RawRing, cfg: &Config) -> Result<FusionRing> {
        let n = raw.n;
        if n == 0 {
            return Err(Error::Range {
                detail: "a ring needs at least the vacuum primary".into(),
            });
        }
        if n > MAX_PRIMARIES {
            return Err(Error::TooManyPrimaries { n });
        }
        if raw.fusion.len() != n * n * n {
            return Err(Error::Range {
                detail: format!(
                    "fusion tensor has {} entries, expected {}",
                    raw.fusion.len(),
                    n * n * n
                ),
            });
        }

        let at = |p: usize, q: usize, r: usize| raw.fusion[p * n * n + q * n + r];

        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if at(p, q, r) < 0 {
                        return Err(Error::NegativeEntry { p, q, r });
                    }
                }
            }
        }

        // Vacuum acts as the unit.
        for q in 0..n {
            for r in 0..n {
                let expected = i64::from(q == r);
                if at(0, q, r) != expected {
                    return Err(Error::UnitViolation {
                        q,
                        r,
                        value: at(0, q, r),
                        expected,
                    });
                }
            }
        }

        for p in 0..n {
            for q in 0..p {
                for r in 0..n {
                    if at(p, q, r) != at(q, p, r) {
                        return Err(Error::CommutativityViolation {
                            p,
                            q,
                            r,
                            left: at(p, q, r),
                            right: at(q, p, r),
                        });
                    }
                }
            }
        }

        // Associativity of the product: (p q) r = p (q r) for all t.
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for t in 0..n {
                        let mut left = 0i64;
                        let mut right = 0i64;
                        for s in 0..n {
                            left += at(p, q, s) * at(s, r, t);
                            right += at(q, r, s) * at(p, s, t);
                        }
                        if left != right {
                            return Err(Error::AssociativityViolation {
                                p,
                                q,
                                r,
                                t,
                                left,
                                right,
                            });
                        }
                    }
                }
            }
        }

        // Conjugation: each primary has exactly one dual, with multiplicity 1.
        let mut conj = vec![0usize; n];
        for (p, slot) in conj.iter_mut().enumerate() {
            let mut dual = None;
            for q in 0..n {
                match at(p, q, 0) {
                    0 => {}
                    1 => {
                        if dual.replace(q).is_some() {
                            return Err(Error::ConjugationViolation {
                                p,
                                detail: "multiple duals".into(),
                            });
                        }
                    }
                    m => {
                        return Err(Error::ConjugationViolation {
                            p,
                            detail: format!("N[{p}][{q}][0] = {m}, expected 0 or 1"),
                        });
                    }
                }
            }
            *slot = dual.ok_or_else(|| Error::ConjugationViolation {
                p,
                detail: "no dual".into(),
            })?;
        }
        for (p, &dual) in conj.iter().enumerate() {
            if conj[dual] != p {
                return Err(Error::ConjugationViolation {
                    p,
                    detail: "conjugation is not an involution".into(),
                });
            }
        }
        if conj[0] != 0 {
            return Err(Error::ConjugationViolation {
                p: 0,
                detail: "vacuum is not self-dual".into(),
            });
        }
        // Conjugation must be a ring automorphism. This is what makes the
        // fusion matrices a commuting family of normal matrices.
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if at(p, q, r) != at(conj[p], conj[q], conj[r]) {
                        return Err(Error::ConjugationViolation {
                            p,
                            detail: format!(
                                "N[{p}][{q}][{r}] = {} but the conjugated entry is {}",
                                at(p, q, r),
                                at(conj[p], conj[q], conj[r])
                            ),
                        });
                    }
                }
            }
        }

        let fusion: Vec<u32> = raw.fusion.iter().map(|&x| x as u32).collect();
        let dims = perron_frobenius_dims(n, &fusion)?;
        let total_dim_sq: f64 = dims.iter().map(|d| d * d).sum();

        // Quantum dimension is a one-dimensional representation with
        // positive values: sum_r N_pq^r d_r = d_p d_q.
        for p in 0..n {
            for q in 0..n {
                let mut sum = 0.0;
                for r in 0..n {
                    sum += f64::from(fusion[p * n * n + q * n + r]) * dims[r];
                }
                let target = dims[p] * dims[q];
                if (sum - target).abs() > 1e-9 * target.max(1.0) {
                    return Err(Error::SpectralFailure {
                        detail: format!(
                            "dimension vector fails the product identity at (p,q) = ({p},{q}): \
                             {sum} vs {target}"
                        ),
                    });
                }
            }
        }
        for (p, d) in dims.iter().enumerate() {
            if (d - dims[conj[p]]).abs() > 1e-9 * d.max(1.0) {
                return Err(Error::SpectralFailure {
                    detail: format!("d[{p}] differs from the dimension of its conjugate"),
                });
            }
        }

        let mut warnings = Vec::new();

        let smatrix = match raw.smatrix {
            None => None,
            Some(s) => {
                validate_smatrix(n, &s, &dims, total_dim_sq, cfg.tolerance)?;
                Some(s)
            }
        };

        let weights = match raw.weights {
            None => None,
            Some(w) => {
                if w.len() != n {
                    return Err(Error::Range {
                        detail: format!("{} weights given for {} primaries", w.len(), n),
                    });
                }
                if !w[0].is_integer() {
                    warnings.push(format!(
                        "vacuum weight {} is not an integer; twister detection assumes \
                         integral vacuum weight",
                        w[0]
                    ));
                }
                Some(w)
            }
        };

        let labels = match raw.labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::Range {
                    detail: format!("{} labels given for {} primaries", l.len(), n),
                });
            }
            None => (0..n).map(|p| p.to_string()).collect(),
        };

        let (chars, modular_compatible) =
            CharacterTable::build(n, &fusion, &conj, &dims, total_dim_sq, smatrix.as_deref(), cfg)?;
        if !modular_compatible {
            warnings.push(
                "no symmetric unitary diagonalizing matrix exists for this ring; \
                 character attachment was chosen by combinatorial consistency"
                    .into(),
            );
        }

        Ok(FusionRing {
            n,
            fusion,
            labels,
            conj,
            dims,
            total_dim_sq,
            smatrix,
            weights,
            chars,
            modular_compatible,
            warnings,
            tolerance: cfg.tolerance,
        })
    }

    pub fn primary_count(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, p: usize, q: usize, r: usize) -> u32 {
        self.fusion[p * self.n * self.n + q * self.n + r]
    }

    /// The fusion matrix N(p) with entries `[N(p)]_q^r = N_pq^r`.
    pub fn fusion_matrix(&self, p: usize) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|q| (0..self.n).map(|r| self.coefficient(p, q, r)).collect())
            .collect()
    }

    pub fn conjugate(&self, p: usize) -> usize {
        self.conj[p]
    }

    pub fn dim(&self, p: usize) -> f64 {
        self.dims[p]
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn total_dim_sq(&self) -> f64 {
        self.total_dim_sq
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn smatrix(&self) -> Option<&[Complex64]> {
        self.smatrix.as_deref()
    }

    pub fn smatrix_entry(&self, p: usize, q: usize) -> Option<Complex64> {
        self.smatrix.as_ref().map(|s| s[p * self.n + q])
    }

    pub fn weights(&self) -> Option<&[Rational64]> {
        self.weights.as_deref()
    }

    pub fn characters(&self) -> &CharacterTable {
        &self.chars
    }

    /// Whether the ring admits a symmetric unitary diagonalizing matrix.
    /// Structure results that depend on modular data (for example constancy
    /// of the extent product across the lattice) only apply when this holds.
    pub fn modular_compatible(&self) -> bool {
        self.modular_compatible
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Whether `|x - round(x)|` is below the ring tolerance.
    pub fn is_integral_value(&self, x: f64) -> bool {
        (x - x.round()).abs() < self.tolerance
    }
}

/// Cross-check of the fusion rules against the diagonalization formula of
/// the S-matrix. Report-only; the maximum deviation is returned.
pub fn verlinde_consistency(ring: &FusionRing) -> Result<VerlindeReport> {
    let n = ring.primary_count();
    let s = ring
        .smatrix()
        .ok_or_else(|| Error::Precondition("verlinde_consistency requires an S-matrix".into()))?;
    let mut max_dev = 0.0f64;
    let mut argmax = (0, 0, 0);
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let mut sum = Complex64::new(0.0, 0.0);
                for t in 0..n {
                    sum += s[p * n + t] * s[q * n + t] * s[r * n + t].conj() / s[t];
                }
                let dev = (sum - f64::from(ring.coefficient(p, q, r))).norm();
                if dev > max_dev {
                    max_dev = dev;
                    argmax = (p, q, r);
                }
            }
        }
    }
    Ok(VerlindeReport {
        max_deviation: max_dev,
        at: argmax,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct VerlindeReport {
    pub max_deviation: f64,
    pub at: (usize, usize, usize),
}

/// Quantum dimensions via the common Perron-Frobenius eigenvector.
///
/// The sum M of all fusion matrices is primitive (M^2 is strictly positive
/// because row and column 0 of M are positive), so power iteration from the
/// all-ones vector converges to the unique positive eigenvector v. With
/// v normalized to v[0] = 1 the entries are exactly the spectral radii of
/// the individual fusion matrices: N(p) v = v[p] v.
fn perron_frobenius_dims(n: usize, fusion: &[u32]) -> Result<Vec<f64>> {
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let mut m = vec![0.0f64; n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                m[q * n + r] += f64::from(fusion[p * n * n + q * n + r]);
            }
        }
    }
    let mut v = vec![1.0f64; n];
    let mut next = vec![0.0f64; n];
    let max_iters = 200 * n + 2000;
    for _ in 0..max_iters {
        for q in 0..n {
            let mut acc = 0.0;
            for r in 0..n {
                acc += m[q * n + r] * v[r];
            }
            next[q] = acc;
        }
        let norm = next.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if norm == 0.0 {
            return Err(Error::SpectralFailure {
                detail: "power iteration collapsed to zero".into(),
            });
        }
        for x in next.iter_mut() {
            *x /= norm;
        }
        let rayleigh: f64 = {
            let num: f64 = (0..n)
                .map(|q| next[q] * (0..n).map(|r| m[q * n + r] * next[r]).sum::<f64>())
                .sum();
            let den: f64 = next.iter().map(|x| x * x).sum();
            num / den
        };
        let mut residual = 0.0f64;
        for q in 0..n {
            let mv: f64 = (0..n).map(|r| m[q * n + r] * next[r]).sum();
            residual = residual.max((mv - rayleigh * next[q]).abs());
        }
        std::mem::swap(&mut v, &mut next);
        if residual < 1e-13 * rayleigh.max(1.0) {
            if v[0] <= 0.0 {
                return Err(Error::SpectralFailure {
                    detail: "Perron-Frobenius eigenvector has a non-positive vacuum entry".into(),
                });
            }
            let v0 = v[0];
            let dims: Vec<f64> = v.iter().map(|x| x / v0).collect();
            if dims.iter().any(|d| *d <= 0.0) {
                return Err(Error::SpectralFailure {
                    detail: "non-positive quantum dimension".into(),
                });
            }
            return Ok(dims);
        }
    }
    Err(Error::SpectralFailure {
        detail: "power iteration did not converge".into(),
    })
}

fn validate_smatrix(
    n: usize,
    s: &[Complex64],
    dims: &[f64],
    total_dim_sq: f64,
    tol: f64,
) -> Result<()> {
    if s.len() != n * n {
        return Err(Error::SMatrixViolation {
            detail: format!("S has {} entries, expected {}", s.len(), n * n),
        });
    }
    for p in 0..n {
        for q in 0..n {
            if (s[p * n + q] - s[q * n + p]).norm() > tol {
                return Err(Error::SMatrixViolation {
                    detail: format!("not symmetric at ({p},{q})"),
                });
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            let mut sum = Complex64::new(0.0, 0.0);
            for r in 0..n {
                sum += s[p * n + r] * s[q * n + r].conj();
            }
            let target = Complex64::new(f64::from(p == q), 0.0);
            if (sum - target).norm() > 10.0 * tol {
                return Err(Error::SMatrixViolation {
                    detail: format!("not unitary at ({p},{q}): row product {sum}"),
                });
            }
        }
    }
    for p in 0..n {
        let e = s[p];
        if e.im.abs() > tol || e.re <= 0.0 {
            return Err(Error::SMatrixViolation {
                detail: format!("S[0][{p}] = {e} must be real and positive"),
            });
        }
        let ratio = (s[p] / s[0]).re;
        if (ratio - dims[p]).abs() > 1e-6 * dims[p].max(1.0) {
            return Err(Error::SMatrixViolation {
                detail: format!(
                    "S[0][{p}]/S[0][0] = {ratio} disagrees with the quantum dimension {}",
                    dims[p]
                ),
            });
        }
    }
    let inv_s00_sq = 1.0 / s[0].norm_sqr();
    if (inv_s00_sq - total_dim_sq).abs() > 1e-6 * total_dim_sq {
        return Err(Error::SMatrixViolation {
            detail: format!(
                "1/|S[0][0]|^2 = {inv_s00_sq} disagrees with the global dimension {total_dim_sq}"
            ),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;

    #[test]
    fn trivial_ring_validates() {
        let ring = testdata::trivial();
        assert_eq!(ring.primary_count(), 1);
        assert_eq!(ring.dims(), &[1.0]);
        assert_eq!(ring.total_dim_sq(), 1.0);
    }

    #[test]
    fn ising_dims_are_one_one_sqrt2() {
        let ring = testdata::ising();
        assert!((ring.dim(0) - 1.0).abs() < 1e-12);
        assert!((ring.dim(1) - 1.0).abs() < 1e-12);
        assert!((ring.dim(2) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(ring.conjugate(0), 0);
        assert_eq!(ring.conjugate(1), 1);
        assert_eq!(ring.conjugate(2), 2);
        assert!((ring.total_dim_sq() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_dim_is_golden_ratio() {
        let ring = testdata::fibonacci();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((ring.dim(1) - phi).abs() < 1e-12);
    }

    #[test]
    fn fusion_matrix_examples() {
        let ring = testdata::ising();
        // vacuum row: identity
        assert_eq!(ring.fusion_matrix(0), vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ]);
        // sigma: sigma*1 = sigma, sigma*eps = sigma, sigma*sigma = 1 + eps
        assert_eq!(ring.fusion_matrix(2), vec![
            vec![0, 0, 1],
            vec![0, 0, 1],
            vec![1, 1, 0],
        ]);
        let fib = testdata::fibonacci();
        assert_eq!(fib.fusion_matrix(1), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn broken_associativity_is_rejected() {
        // Ising with N_{sigma sigma}^{eps} set to 2: (sigma sigma) eps and
        // sigma (sigma eps) then disagree.
        let mut raw = testdata::ising_raw();
        raw.smatrix = None;
        raw.fusion[2 * 9 + 2 * 3 + 1] = 2;
        let err = FusionRing::validate(raw, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }), "{err}");
    }

    #[test]
    fn adding_sigma_to_its_own_square_gives_a_valid_ring() {
        // Setting N_{sigma sigma}^{sigma} = 1 does not break associativity:
        // the result is the character ring of the symmetric group on three
        // letters, with dimensions (1, 1, 2).
        let mut raw = testdata::ising_raw();
        raw.smatrix = None;
        raw.weights = None;
        raw.fusion[2 * 9 + 2 * 3 + 2] = 1;
        let ring = FusionRing::validate(raw, &Config::default()).unwrap();
        assert!((ring.dim(2) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn broken_unit_is_rejected() {
        let mut raw = testdata::ising_raw();
        raw.smatrix = None;
        raw.fusion[5] = 1; // the (0, 1, 2) entry
        let err = FusionRing::validate(raw, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::UnitViolation { .. }));
    }

    #[test]
    fn negative_entry_is_rejected() {
        let mut raw = testdata::ising_raw();
        raw.fusion[26] = -1;
        let err = FusionRing::validate(raw, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::NegativeEntry { .. }));
    }

    #[test]
    fn swapped_smatrix_rows_are_rejected() {
        let mut raw = testdata::ising_raw();
        let s = raw.smatrix.as_mut().unwrap();
        for c in 0..3 {
            s.swap(c, 3 + c);
        }
        let err = FusionRing::validate(raw, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::SMatrixViolation { .. }));
    }

    #[test]
    fn verlinde_consistency_on_ising() {
        let ring = testdata::ising();
        let report = verlinde_consistency(&ring).unwrap();
        assert!(report.max_deviation < 1e-12, "{}", report.max_deviation);
    }

    #[test]
    fn verlinde_consistency_flags_tampered_smatrix() {
        // Swapping rows 1 and 2 of the S-matrix no longer diagonalizes the
        // fusion rules; the raw formula must flag a gross deviation. (Such a
        // matrix cannot enter a validated ring, so evaluate it directly.)
        let ring = testdata::ising();
        let n = 3;
        let mut s: Vec<Complex64> = ring.smatrix().unwrap().to_vec();
        for c in 0..n {
            s.swap(n + c, 2 * n + c);
        }
        let mut max_dev = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let mut sum = Complex64::new(0.0, 0.0);
                    for t in 0..n {
                        sum += s[p * n + t] * s[q * n + t] * s[r * n + t].conj() / s[t];
                    }
                    max_dev = max_dev.max((sum - f64::from(ring.coefficient(p, q, r))).norm());
                }
            }
        }
        assert!(max_dev >= 0.5, "expected a gross deviation, got {max_dev}");
    }

    #[test]
    fn spectral_radius_matches_dims_oracle() {
        // Independent oracle: the spectral radius of each fusion matrix
        // computed by a general eigenvalue routine.
        for ring in [testdata::ising(), testdata::fibonacci(), testdata::toric()] {
            let n = ring.primary_count();
            for p in 0..n {
                let m = nalgebra::DMatrix::<f64>::from_fn(n, n, |q, r| {
                    f64::from(ring.coefficient(p, q, r))
                });
                let radius = m
                    .complex_eigenvalues()
                    .iter()
                    .map(|l| l.norm())
                    .fold(0.0f64, f64::max);
                assert!(
                    (radius - ring.dim(p)).abs() < 1e-9,
                    "p = {p}: spectral radius {radius} vs dim {}",
                    ring.dim(p)
                );
            }
        }
    }
}
