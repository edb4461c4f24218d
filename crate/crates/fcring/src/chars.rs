//! One-dimensional characters of the Verlinde algebra and their attachment
//! to primaries.
//!
//! The fusion matrices of a validated ring form a commuting family of normal
//! matrices (conjugation acts as transposition), so they share an orthogonal
//! eigenbasis. Each joint eigenvector is, up to scale, the vector of values
//! of one character: if N(a) v = chi(a) v for all a then v[a] = chi(a) v[0].
//!
//! When an S-matrix is given the character attached to primary p is
//! `chi_p(a) = S[a][p] / S[0][p]`. Without one, the characters are computed
//! by diagonalizing a random combination of fusion matrices and the
//! attachment is recovered, either by reconstructing a symmetric unitary
//! diagonalizer (possible exactly when the ring is modular-compatible) or by
//! a combinatorial consistency search.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::set::PrimarySet;

/// Knobs shared by validation and character computation.
#[derive(Debug, Clone)]
pub struct Config {
    /// Global tolerance for floating-point equality tests.
    pub tolerance: f64,
    /// Seed for the random combinations used in diagonalization.
    pub seed: u64,
    /// Retries for the random-combination diagonalization.
    pub max_attempts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tolerance: 1e-9,
            seed: 7,
            max_attempts: 12,
        }
    }
}

/// How character rows were tied to primaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attachment {
    /// Read off the supplied S-matrix.
    FromSMatrix,
    /// A symmetric unitary diagonalizer was reconstructed from the fusion
    /// data alone.
    Reconstructed,
    /// No such diagonalizer exists; a combinatorially consistent assignment
    /// was selected instead.
    Searched,
}

/// Global character table: row `p` holds the values of the representation
/// attached to primary `p` on all fusion matrices.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    n: usize,
    /// rows[p][a] = value of the p-th representation on N(a).
    rows: Vec<Vec<Complex64>>,
    /// Spectral weight of each primary: `w_p = 1 / ||rows[p]||^2`. For a
    /// modular-compatible ring this equals `d_p^2 / total_dim_sq`. The
    /// extent of a class C is `1 / sum_{p in C} w_p`.
    weights: Vec<f64>,
    /// Row indices in report order: the dimension row first, the rest sorted
    /// by rounded values.
    canonical_order: Vec<usize>,
    attachment: Attachment,
    tolerance: f64,
}

impl CharacterTable {
    pub(crate) fn build(
        n: usize,
        fusion: &[u32],
        conj: &[usize],
        dims: &[f64],
        total_dim_sq: f64,
        smatrix: Option<&[Complex64]>,
        cfg: &Config,
    ) -> Result<(CharacterTable, bool)> {
        let (rows, attachment) = match smatrix {
            Some(s) => (rows_from_smatrix(n, fusion, s)?, Attachment::FromSMatrix),
            None => {
                let chars = characters_by_diagonalization(n, fusion, dims, cfg)?;
                attach_characters(n, fusion, conj, dims, total_dim_sq, chars)?
            }
        };

        let weights: Vec<f64> = rows
            .iter()
            .map(|row| 1.0 / row.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .collect();

        // Exactly one row may equal the dimension vector, and it must be the
        // vacuum row.
        let mut dim_rows = Vec::new();
        for (p, row) in rows.iter().enumerate() {
            let close = row
                .iter()
                .zip(dims)
                .all(|(c, d)| (c - Complex64::new(*d, 0.0)).norm() < 1e-6 * (1.0 + d));
            if close {
                dim_rows.push(p);
            }
        }
        if dim_rows != [0] {
            return Err(Error::SpectralFailure {
                detail: format!("dimension rows found at {dim_rows:?}, expected exactly [0]"),
            });
        }

        let mut rest: Vec<usize> = (1..n).collect();
        rest.sort_by(|&a, &b| lex_key(&rows[a]).cmp(&lex_key(&rows[b])));
        let mut canonical_order = vec![0usize];
        canonical_order.extend(rest);

        let modular = attachment != Attachment::Searched;
        Ok((
            CharacterTable {
                n,
                rows,
                weights,
                canonical_order,
                attachment,
                tolerance: cfg.tolerance,
            },
            modular,
        ))
    }

    pub fn value(&self, p: usize, alpha: usize) -> Complex64 {
        self.rows[p][alpha]
    }

    pub fn row(&self, p: usize) -> &[Complex64] {
        &self.rows[p]
    }

    /// Spectral weight of a primary; class extents are reciprocals of sums
    /// of these.
    pub fn weight(&self, p: usize) -> f64 {
        self.weights[p]
    }

    pub fn set_weight(&self, set: &PrimarySet) -> f64 {
        set.iter().map(|p| self.weights[p]).sum()
    }

    pub fn canonical_order(&self) -> &[usize] {
        &self.canonical_order
    }

    pub fn attachment(&self) -> Attachment {
        self.attachment
    }

    /// Maximum componentwise distance between the rows of `p` and `q`
    /// restricted to the columns in `on`.
    pub fn row_distance(&self, p: usize, q: usize, on: &PrimarySet) -> f64 {
        on.iter()
            .map(|a| (self.rows[p][a] - self.rows[q][a]).norm())
            .fold(0.0, f64::max)
    }

    /// Spectrum cross-check: the column values, counted with multiplicity,
    /// must be exactly the eigenvalues of the fusion matrix. Checked by
    /// comparing the characteristic polynomial of N(alpha) against the
    /// monic polynomial with the column as its root multiset, which avoids
    /// iterative eigensolvers entirely.
    pub fn column_matches_spectrum(&self, fusion: &[u32], alpha: usize) -> bool {
        let n = self.n;
        let m = DMatrix::<f64>::from_fn(n, n, |q, r| f64::from(fusion[alpha * n * n + q * n + r]));
        let coeffs = char_poly(&m);
        // Expand prod_p (x - X[p][alpha]).
        let mut poly = vec![Complex64::new(0.0, 0.0); n + 1];
        poly[0] = Complex64::new(1.0, 0.0);
        let mut degree = 0usize;
        for p in 0..n {
            let root = self.rows[p][alpha];
            degree += 1;
            for k in (1..=degree).rev() {
                let lower = poly[k - 1];
                poly[k] -= root * lower;
            }
        }
        let scale = coeffs.iter().fold(1.0f64, |a, c| a.max(c.abs()));
        coeffs.iter().zip(&poly).all(|(c, candidate)| {
            (candidate - Complex64::new(*c, 0.0)).norm() < 1e-6 * scale
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// Characteristic polynomial coefficients in descending order, leading 1,
/// via the Faddeev-LeVerrier recursion. Exact up to rounding for the small
/// integer matrices handled here.
fn char_poly(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / k as f64;
        coeffs.push(ck);
        if k < n {
            for i in 0..n {
                mk[(i, i)] += ck;
            }
            mk = m * mk;
        }
    }
    coeffs
}

fn lex_key(row: &[Complex64]) -> Vec<(i64, i64)> {
    row.iter()
        .map(|c| ((c.re * 1e9).round() as i64, (c.im * 1e9).round() as i64))
        .collect()
}

fn rows_from_smatrix(
    n: usize,
    fusion: &[u32],
    s: &[Complex64],
) -> Result<Vec<Vec<Complex64>>> {
    let mut rows = Vec::with_capacity(n);
    for p in 0..n {
        let row: Vec<Complex64> = (0..n).map(|a| s[a * n + p] / s[p]).collect();
        rows.push(row);
    }
    // Each S-column must be a joint eigenvector: N(a) s_p = rows[p][a] s_p.
    for p in 0..n {
        for a in 0..n {
            let mut worst = 0.0f64;
            for q in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    acc += f64::from(fusion[a * n * n + q * n + r]) * s[r * n + p];
                }
                worst = worst.max((acc - rows[p][a] * s[q * n + p]).norm());
            }
            if worst > 1e-6 {
                return Err(Error::SMatrixInconsistent {
                    detail: format!(
                        "column {p} is not an eigenvector of N({a}); residual {worst:.3e}"
                    ),
                });
            }
        }
    }
    Ok(rows)
}

/// Joint characters from a random real combination of the fusion matrices.
///
/// The combination is normal, so its real Schur form is quasi-diagonal and
/// the (possibly complex) eigenvectors can be read off exactly. Every
/// eigenvector is rescaled so its vacuum component is one, which turns it
/// into the vector of character values.
fn characters_by_diagonalization(
    n: usize,
    fusion: &[u32],
    dims: &[f64],
    cfg: &Config,
) -> Result<Vec<Vec<Complex64>>> {
    if n == 1 {
        return Ok(vec![vec![Complex64::new(1.0, 0.0)]]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last_err = None;
    for _attempt in 0..cfg.max_attempts {
        let coeffs: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..2.0)).collect();
        match try_characters(n, fusion, dims, &coeffs, cfg) {
            Ok(chars) => return Ok(chars),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::DegenerateSpectrum {
        attempts: cfg.max_attempts,
    }))
}

fn try_characters(
    n: usize,
    fusion: &[u32],
    dims: &[f64],
    coeffs: &[f64],
    cfg: &Config,
) -> Result<Vec<Vec<Complex64>>> {
    let t = DMatrix::<f64>::from_fn(n, n, |q, r| {
        (0..n)
            .map(|a| coeffs[a] * f64::from(fusion[a * n * n + q * n + r]))
            .sum()
    });
    let scale = t.amax().max(1.0);
    // Bounded iteration: highly symmetric matrices can defeat the shift
    // strategy, in which case a fresh random combination is tried.
    let Some(schur) = nalgebra::linalg::Schur::try_new(t.clone(), 1e-13, 100_000) else {
        return Err(Error::SpectralFailure {
            detail: "Schur iteration did not converge".into(),
        });
    };
    let (q, u) = schur.unpack();

    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let coupled = i + 1 < n && u[(i + 1, i)].abs() > 1e-10 * scale;
        if coupled {
            // 2x2 block with a complex conjugate pair of eigenvalues.
            let (a, b) = (u[(i, i)], u[(i, i + 1)]);
            let (c, d) = (u[(i + 1, i)], u[(i + 1, i + 1)]);
            let tr = a + d;
            let disc = (a - d) * (a - d) + 4.0 * b * c;
            if disc >= 0.0 {
                return Err(Error::SpectralFailure {
                    detail: "unexpected real 2x2 Schur block".into(),
                });
            }
            let im = (-disc).sqrt() / 2.0;
            for sign in [1.0f64, -1.0] {
                let lambda = Complex64::new(tr / 2.0, sign * im);
                // Eigenvector of the block: (b, lambda - a), or the other
                // row if that one degenerates.
                let (x, y) = if b.abs() >= c.abs() {
                    (Complex64::new(b, 0.0), lambda - a)
                } else {
                    (lambda - d, Complex64::new(c, 0.0))
                };
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                for row in 0..n {
                    v[row] = x * q[(row, i)] + y * q[(row, i + 1)];
                }
                vectors.push(v);
            }
            i += 2;
        } else {
            let v = (0..n).map(|row| Complex64::new(q[(row, i)], 0.0)).collect();
            vectors.push(v);
            i += 1;
        }
    }

    // Rescale so that v[0] = 1; then v[a] is the character value on N(a).
    let mut chars = Vec::with_capacity(n);
    for mut v in vectors {
        if v[0].norm() < 1e-9 {
            return Err(Error::SpectralFailure {
                detail: "joint eigenvector with vanishing vacuum component".into(),
            });
        }
        let v0 = v[0];
        for x in v.iter_mut() {
            *x /= v0;
        }
        chars.push(v);
    }

    // Verify every candidate against every fusion matrix.
    for v in &chars {
        let vnorm = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for a in 0..n {
            let lambda = v[a];
            for qi in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    acc += f64::from(fusion[a * n * n + qi * n + r]) * v[r];
                }
                let resid = (acc - lambda * v[qi]).norm();
                if resid > 1e-7 * (1.0 + dims[a] * vnorm) {
                    return Err(Error::SpectralFailure {
                        detail: format!("eigenvector residual {resid:.3e} on N({a})"),
                    });
                }
            }
        }
    }

    // Characters must be pairwise distinct well beyond the tolerance.
    for i in 0..n {
        for j in 0..i {
            let dist = chars[i]
                .iter()
                .zip(&chars[j])
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            if dist < 10.0 * cfg.tolerance {
                return Err(Error::DegenerateSpectrum { attempts: 1 });
            }
        }
    }
    Ok(chars)
}

/// Ties each computed character to a primary.
fn attach_characters(
    n: usize,
    fusion: &[u32],
    conj: &[usize],
    dims: &[f64],
    total_dim_sq: f64,
    chars: Vec<Vec<Complex64>>,
) -> Result<(Vec<Vec<Complex64>>, Attachment)> {
    // The dimension character is attached to the vacuum.
    let mut dim_idx = None;
    for (j, ch) in chars.iter().enumerate() {
        if ch
            .iter()
            .zip(dims)
            .all(|(c, d)| (c - Complex64::new(*d, 0.0)).norm() < 1e-6 * (1.0 + d))
        {
            dim_idx = Some(j);
            break;
        }
    }
    let dim_idx = dim_idx.ok_or_else(|| Error::SpectralFailure {
        detail: "no character equals the dimension vector".into(),
    })?;

    let order = canonical_char_order(&chars, dim_idx);

    if let Some(assign) = symmetric_assignment(n, dims, total_dim_sq, &chars, dim_idx, &order) {
        let rows = apply_assignment(n, &chars, &assign);
        return Ok((rows, Attachment::Reconstructed));
    }

    let assign = consistency_search(n, fusion, conj, dims, &chars, dim_idx, &order)?;
    let rows = apply_assignment(n, &chars, &assign);
    Ok((rows, Attachment::Searched))
}

fn canonical_char_order(chars: &[Vec<Complex64>], dim_idx: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..chars.len()).filter(|&j| j != dim_idx).collect();
    order.sort_by(|&a, &b| lex_key(&chars[a]).cmp(&lex_key(&chars[b])));
    let mut full = vec![dim_idx];
    full.extend(order);
    full
}

fn apply_assignment(n: usize, chars: &[Vec<Complex64>], assign: &[usize]) -> Vec<Vec<Complex64>> {
    // assign[j] = primary carrying character j
    let mut rows = vec![Vec::new(); n];
    for (j, &p) in assign.iter().enumerate() {
        rows[p] = chars[j].clone();
    }
    rows
}

/// Attempts to reconstruct a symmetric unitary diagonalizer.
///
/// Column p of such a matrix is the character vector attached to p divided
/// by its norm, and its vacuum entry is d_p / sqrt(total). That fixes the
/// candidate primaries for each character up to coincidences of quantum
/// dimension, which a backtracking search over the symmetry constraint
/// resolves.
fn symmetric_assignment(
    n: usize,
    dims: &[f64],
    total_dim_sq: f64,
    chars: &[Vec<Complex64>],
    dim_idx: usize,
    order: &[usize],
) -> Option<Vec<usize>> {
    let sqrt_total = total_dim_sq.sqrt();
    let norms: Vec<f64> = chars
        .iter()
        .map(|ch| ch.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
        .collect();

    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &j in order {
        let implied_dim = sqrt_total / norms[j];
        for (p, d) in dims.iter().enumerate() {
            if (implied_dim - d).abs() < 1e-6 * (1.0 + d) {
                candidates[j].push(p);
            }
        }
        if candidates[j].is_empty() {
            return None;
        }
    }
    if candidates[dim_idx] != [0] && !candidates[dim_idx].contains(&0) {
        return None;
    }

    // s_entry(j, q) = candidate S entry S[q][p(j)]
    let s_entry = |j: usize, q: usize| chars[j][q] / norms[j];

    let mut assign = vec![usize::MAX; chars.len()];
    let mut used = vec![false; n];
    assign[dim_idx] = 0;
    used[0] = true;

    let mut nodes = 0usize;
    fn backtrack(
        pos: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        s_entry: &dyn Fn(usize, usize) -> Complex64,
        nodes: &mut usize,
    ) -> bool {
        if *nodes > 1_000_000 {
            return false;
        }
        if pos == order.len() {
            return true;
        }
        let j = order[pos];
        if assign[j] != usize::MAX {
            return backtrack(pos + 1, order, candidates, assign, used, s_entry, nodes);
        }
        for &p in &candidates[j] {
            if used[p] {
                continue;
            }
            *nodes += 1;
            // Symmetry against the characters assigned so far.
            let ok = order[..pos].iter().all(|&j2| {
                let p2 = assign[j2];
                p2 == usize::MAX || (s_entry(j, p2) - s_entry(j2, p)).norm() < 1e-6
            });
            if !ok {
                continue;
            }
            assign[j] = p;
            used[p] = true;
            if backtrack(pos + 1, order, candidates, assign, used, s_entry, nodes) {
                return true;
            }
            assign[j] = usize::MAX;
            used[p] = false;
        }
        false
    }

    if backtrack(
        0,
        order,
        &candidates,
        &mut assign,
        &mut used,
        &s_entry,
        &mut nodes,
    ) {
        Some(assign)
    } else {
        None
    }
}

/// Fallback for rings with no symmetric diagonalizer. Tries bijections
/// between characters and primaries, keeping the first one under which
/// every cyclic fusion-closed set has a fusion-closed trivial class whose
/// spectral extent matches the sum of squared dimensions.
#[allow(clippy::too_many_arguments)]
fn consistency_search(
    n: usize,
    fusion: &[u32],
    conj: &[usize],
    dims: &[f64],
    chars: &[Vec<Complex64>],
    dim_idx: usize,
    order: &[usize],
) -> Result<Vec<usize>> {
    let cyclic: Vec<PrimarySet> = (0..n).map(|p| raw_closure(n, fusion, p)).collect();

    let mut assign = vec![usize::MAX; chars.len()];
    let mut used = vec![false; n];
    assign[dim_idx] = 0;
    used[0] = true;

    let mut nodes = 0usize;
    let found = search_rec(
        0,
        order,
        &mut assign,
        &mut used,
        &mut nodes,
        &|assign: &[usize]| {
            attachment_is_consistent(n, fusion, conj, dims, chars, assign, &cyclic)
        },
    );
    if found {
        Ok(assign)
    } else if nodes > 2_000_000 {
        Err(Error::AttachmentFailure {
            detail: "search budget exhausted; provide an S-matrix for this model".into(),
        })
    } else {
        Err(Error::AttachmentFailure {
            detail: "no bijection between characters and primaries passes the \
                     closure and extent consistency checks"
                .into(),
        })
    }
}

fn search_rec(
    pos: usize,
    order: &[usize],
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    nodes: &mut usize,
    accept: &dyn Fn(&[usize]) -> bool,
) -> bool {
    if *nodes > 2_000_000 {
        return false;
    }
    if pos == order.len() {
        return accept(assign);
    }
    let j = order[pos];
    if assign[j] != usize::MAX {
        return search_rec(pos + 1, order, assign, used, nodes, accept);
    }
    for p in 0..used.len() {
        if used[p] {
            continue;
        }
        *nodes += 1;
        assign[j] = p;
        used[p] = true;
        if search_rec(pos + 1, order, assign, used, nodes, accept) {
            return true;
        }
        assign[j] = usize::MAX;
        used[p] = false;
    }
    false
}

fn attachment_is_consistent(
    n: usize,
    fusion: &[u32],
    conj: &[usize],
    dims: &[f64],
    chars: &[Vec<Complex64>],
    assign: &[usize],
    cyclic: &[PrimarySet],
) -> bool {
    // row_of[p] = character index attached to p
    let mut row_of = vec![usize::MAX; n];
    for (j, &p) in assign.iter().enumerate() {
        row_of[p] = j;
    }
    // Conjugate primaries must carry conjugate characters.
    for p in 0..n {
        let a = &chars[row_of[p]];
        let b = &chars[row_of[conj[p]]];
        let dist = a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y.conj()).norm())
            .fold(0.0, f64::max);
        if dist > 1e-6 {
            return false;
        }
    }
    for g in cyclic {
        // Trivial class of g: primaries whose character restricts to the
        // dimension vector on g.
        let mut trivial = PrimarySet::EMPTY;
        let mut weight_sum = 0.0;
        for p in 0..n {
            let row = &chars[row_of[p]];
            let matches = g
                .iter()
                .all(|a| (row[a] - Complex64::new(dims[a], 0.0)).norm() < 1e-6 * (1.0 + dims[a]));
            if matches {
                trivial.insert(p);
                weight_sum += 1.0 / row.iter().map(|c| c.norm_sqr()).sum::<f64>();
            }
        }
        if !raw_is_closed(n, fusion, &trivial) {
            return false;
        }
        // Spectral extent of the trivial class must equal the squared
        // dimension carried by g itself.
        let extent = 1.0 / weight_sum;
        let spread: f64 = g.iter().map(|a| dims[a] * dims[a]).sum();
        if (extent - spread).abs() > 1e-6 * (1.0 + spread) {
            return false;
        }
    }
    true
}

pub(crate) fn raw_closure(n: usize, fusion: &[u32], seed: usize) -> PrimarySet {
    let mut set = PrimarySet::singleton(0);
    set.insert(seed);
    loop {
        let mut grew = false;
        let members: Vec<usize> = set.iter().collect();
        for &a in &members {
            for &b in &members {
                for r in 0..n {
                    if fusion[a * n * n + b * n + r] > 0 && !set.contains(r) {
                        set.insert(r);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

pub(crate) fn raw_is_closed(n: usize, fusion: &[u32], set: &PrimarySet) -> bool {
    if !set.contains(0) {
        return false;
    }
    for a in set.iter() {
        for b in set.iter() {
            for r in 0..n {
                if fusion[a * n * n + b * n + r] > 0 && !set.contains(r) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;

    #[test]
    fn ising_characters_from_smatrix() {
        let ring = testdata::ising();
        let t = ring.characters();
        let s2 = 2f64.sqrt();
        let expect = [
            [1.0, 1.0, s2],
            [1.0, 1.0, -s2],
            [1.0, -1.0, 0.0],
        ];
        for (p, row) in expect.iter().enumerate() {
            for (a, want) in row.iter().enumerate() {
                assert!(
                    (t.value(p, a) - Complex64::new(*want, 0.0)).norm() < 1e-12,
                    "row {p} col {a}: {}",
                    t.value(p, a)
                );
            }
        }
        assert_eq!(t.attachment(), Attachment::FromSMatrix);
    }

    #[test]
    fn ising_characters_without_smatrix_match() {
        // Independent of the S-matrix path: reconstruction must give the
        // same rows within 1e-9.
        let with_s = testdata::ising();
        let without_s = testdata::ising_no_smatrix();
        let a = with_s.characters();
        let b = without_s.characters();
        assert_eq!(b.attachment(), Attachment::Reconstructed);
        for p in 0..3 {
            for c in 0..3 {
                assert!(
                    (a.value(p, c) - b.value(p, c)).norm() < 1e-9,
                    "mismatch at ({p},{c}): {} vs {}",
                    a.value(p, c),
                    b.value(p, c)
                );
            }
        }
    }

    #[test]
    fn trivial_ring_character_table() {
        let ring = testdata::trivial();
        let t = ring.characters();
        assert_eq!(t.row(0).len(), 1);
        assert!((t.value(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn columns_match_fusion_spectra() {
        for ring in [
            testdata::ising(),
            testdata::fibonacci(),
            testdata::toric(),
            testdata::rep_s3(),
        ] {
            let t = ring.characters();
            let n = ring.primary_count();
            let fusion: Vec<u32> = (0..n * n * n)
                .map(|i| {
                    let p = i / (n * n);
                    let q = (i / n) % n;
                    let r = i % n;
                    ring.coefficient(p, q, r)
                })
                .collect();
            for a in 0..n {
                assert!(
                    t.column_matches_spectrum(&fusion, a),
                    "column {a} spectrum mismatch"
                );
            }
        }
    }

    #[test]
    fn vacuum_column_is_all_ones() {
        for ring in [testdata::ising(), testdata::fibonacci(), testdata::z3()] {
            let t = ring.characters();
            for p in 0..ring.primary_count() {
                assert!((t.value(p, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn dimension_row_is_unique_and_first_in_canonical_order(){
        for ring in [testdata::ising(), testdata::toric(), testdata::rep_s3()] {
            let t = ring.characters();
            assert_eq!(t.canonical_order()[0], 0);
            // Row 0 is the only all-positive row.
            let positive_rows: Vec<usize> = (0..ring.primary_count())
                .filter(|&p| {
                    t.row(p)
                        .iter()
                        .all(|c| c.im.abs() < 1e-9 && c.re > 1e-9)
                })
                .collect();
            assert_eq!(positive_rows, vec![0]);
        }
    }

    #[test]
    fn rep_s3_needs_the_consistency_search() {
        let ring = testdata::rep_s3();
        assert_eq!(ring.characters().attachment(), Attachment::Searched);
        assert!(!ring.modular_compatible());
        // The standard representation carries the sign character of the
        // transposition class, so its row restricted to {0,1} is (1,1)
        // for primaries 0 and 1 and (1,-1) for primary 2.
        let t = ring.characters();
        assert!((t.value(1, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!((t.value(2, 1) - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn spectral_weights_match_dims_for_modular_rings() {
        for ring in [testdata::ising(), testdata::fibonacci(), testdata::toric()] {
            let t = ring.characters();
            for p in 0..ring.primary_count() {
                let expected = ring.dim(p) * ring.dim(p) / ring.total_dim_sq();
                assert!(
                    (t.weight(p) - expected).abs() < 1e-9,
                    "weight mismatch at {p}"
                );
            }
        }
    }

    #[test]
    fn rep_s3_spectral_weights_are_class_sizes_over_group_order() {
        // Conjugacy classes of S3 have sizes 1, 3, 2.
        let ring = testdata::rep_s3();
        let t = ring.characters();
        let mut weights: Vec<f64> = (0..3).map(|p| t.weight(p)).collect();
        weights.sort_by(f64::total_cmp);
        let expected = [1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0];
        for (w, e) in weights.iter().zip(expected) {
            assert!((w - e).abs() < 1e-9, "{w} vs {e}");
        }
    }
}
