//! Fusion-closed sets and their class/block structure.
//!
//! For a fusion-closed set g the primaries fall into g-classes (primaries
//! whose characters agree on g) and g-blocks (connected components under
//! fusion with g). The class containing the vacuum is the dual of g and the
//! blocks of g coincide with the classes of that dual, which is checked
//! explicitly wherever both are computed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ring::FusionRing;
use crate::set::PrimarySet;

/// A vacuum-containing, fusion-closed set of primaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FcSet {
    members: PrimarySet,
}

impl FcSet {
    pub fn members(&self) -> PrimarySet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the vacuum
    }

    pub fn contains(&self, p: usize) -> bool {
        self.members.contains(p)
    }

    pub fn is_subset_of(&self, other: &FcSet) -> bool {
        self.members.is_subset_of(&other.members)
    }

    pub fn members_string(&self) -> String {
        self.members.members_string()
    }
}

/// The partition of all primaries into the classes of a fusion-closed set,
/// with the class characters and extents.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub owner: PrimarySet,
    /// Members of g in ascending order; class characters are indexed
    /// against this list.
    pub g_members: Vec<usize>,
    pub classes: Vec<PrimarySet>,
    /// chars[c][i] = value of the class-c character on g_members[i].
    pub chars: Vec<Vec<Complex64>>,
    /// Spectral extents, one per class.
    pub extents: Vec<f64>,
    pub trivial_class: usize,
}

impl ClassPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, p: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(p))
            .expect("classes cover all primaries")
    }

    /// Value of the class character of `class` at the member `alpha` of g.
    pub fn alpha_value(&self, class: usize, alpha: usize) -> Complex64 {
        let i = self
            .g_members
            .iter()
            .position(|&a| a == alpha)
            .expect("alpha must belong to g");
        self.chars[class][i]
    }
}

/// The partition of all primaries into the blocks of a fusion-closed set.
#[derive(Debug, Clone)]
pub struct BlockPartition {
    pub owner: PrimarySet,
    pub blocks: Vec<PrimarySet>,
}

impl BlockPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(p))
            .expect("blocks cover all primaries")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OrthogonalityReport {
    /// Largest deviation of the weighted character sums from the identity.
    pub row_residual: f64,
    /// Largest deviation of the class-pair sums from their target.
    pub column_residual: f64,
}

impl OrthogonalityReport {
    pub fn max_residual(&self) -> f64 {
        self.row_residual.max(self.column_residual)
    }
}

/// Overlap table between blocks and classes.
#[derive(Debug, Clone)]
pub struct OverlapMatrix {
    /// entries[b][c] = multiplicity of class character c in block b.
    pub entries: Vec<Vec<u64>>,
}

impl FusionRing {
    /// The smallest fusion-closed set containing `seed`.
    pub fn closure(&self, seed: PrimarySet) -> FcSet {
        let n = self.primary_count();
        let mut set = seed;
        set.insert(0);
        loop {
            let mut grew = false;
            let members: Vec<usize> = set.iter().collect();
            for &a in &members {
                for &b in &members {
                    for r in 0..n {
                        if self.coefficient(a, b, r) > 0 && !set.contains(r) {
                            set.insert(r);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return FcSet { members: set };
            }
        }
    }

    /// Wraps an already fusion-closed set; errors when it is not closed or
    /// misses the vacuum.
    pub fn fcset(&self, members: PrimarySet) -> Result<FcSet> {
        if !members.contains(0) {
            return Err(Error::Precondition(format!(
                "{{{}}} does not contain the vacuum",
                members.members_string()
            )));
        }
        let closed = self.closure(members);
        if closed.members() != members {
            return Err(Error::Precondition(format!(
                "{{{}}} is not fusion closed; its closure is {{{}}}",
                members.members_string(),
                closed.members_string()
            )));
        }
        Ok(FcSet { members })
    }

    pub fn trivial_fcset(&self) -> FcSet {
        FcSet {
            members: PrimarySet::singleton(0),
        }
    }

    pub fn full_fcset(&self) -> FcSet {
        FcSet {
            members: PrimarySet::full(self.primary_count()),
        }
    }

    /// Groups the primaries by the restriction of their characters to g.
    pub fn classes(&self, g: &FcSet) -> Result<ClassPartition> {
        let n = self.primary_count();
        let chars = self.characters();
        let tol = self.tolerance();
        let owner = g.members();

        let mut cells: Vec<PrimarySet> = Vec::new();
        for p in 0..n {
            let mut placed = false;
            for cell in cells.iter_mut() {
                let rep = cell.min_member().unwrap();
                let dist = chars.row_distance(p, rep, &owner);
                if dist < tol {
                    cell.insert(p);
                    placed = true;
                    break;
                }
            }
            if !placed {
                cells.push(PrimarySet::singleton(p));
            }
        }

        // Guard band: any cross-cell pair closer than 10*tol makes the
        // partition unreliable.
        for (i, a) in cells.iter().enumerate() {
            for b in cells.iter().skip(i + 1) {
                for p in a.iter() {
                    for q in b.iter() {
                        let dist = chars.row_distance(p, q, &owner);
                        if dist < 10.0 * tol {
                            return Err(Error::ToleranceAmbiguity { p, q, distance: dist });
                        }
                    }
                }
            }
        }

        cells.sort_by_key(|c| c.min_member());

        if cells.len() != g.len() {
            return Err(Error::BlockClassMismatch {
                detail: format!(
                    "{} classes for a fusion-closed set of size {}",
                    cells.len(),
                    g.len()
                ),
            });
        }

        let g_members: Vec<usize> = owner.iter().collect();
        let class_chars: Vec<Vec<Complex64>> = cells
            .iter()
            .map(|cell| {
                let rep = cell.min_member().unwrap();
                g_members.iter().map(|&a| chars.value(rep, a)).collect()
            })
            .collect();

        let extents: Vec<f64> = cells
            .iter()
            .map(|cell| 1.0 / chars.set_weight(cell))
            .collect();

        let trivial_class = cells
            .iter()
            .position(|c| c.contains(0))
            .expect("some class contains the vacuum");

        // The trivial class carries the dimension character and its extent
        // equals the squared dimension carried by g.
        let spread: f64 = owner.iter().map(|a| self.dim(a) * self.dim(a)).sum();
        if (extents[trivial_class] - spread).abs() > 1e-7 * (1.0 + spread) {
            return Err(Error::BlockClassMismatch {
                detail: format!(
                    "trivial class extent {} differs from the dimension sum {} of g",
                    extents[trivial_class], spread
                ),
            });
        }

        Ok(ClassPartition {
            owner,
            g_members,
            classes: cells,
            chars: class_chars,
            extents,
            trivial_class,
        })
    }

    /// The dual of g: its trivial class, which is itself fusion closed.
    pub fn dual(&self, g: &FcSet) -> Result<FcSet> {
        let parts = self.classes(g)?;
        let trivial = parts.classes[parts.trivial_class];
        self.fcset(trivial).map_err(|_| Error::BlockClassMismatch {
            detail: format!(
                "trivial class {{{}}} of {{{}}} is not fusion closed",
                trivial.members_string(),
                g.members_string()
            ),
        })
    }

    /// Connected components of the fuse-by-g relation, cross-checked against
    /// the classes of the dual.
    pub fn blocks(&self, g: &FcSet) -> Result<BlockPartition> {
        let blocks = self.blocks_unchecked(g);
        let dual = self.dual(g)?;
        let dual_classes = self.classes(&dual)?;
        let mut expected: Vec<PrimarySet> = dual_classes.classes.clone();
        expected.sort_by_key(|c| c.min_member());
        if blocks.blocks != expected {
            return Err(Error::BlockClassMismatch {
                detail: format!(
                    "blocks of {{{}}} differ from the classes of its dual",
                    g.members_string()
                ),
            });
        }
        Ok(blocks)
    }

    /// The combinatorial block partition without the dual cross-check.
    pub fn blocks_unchecked(&self, g: &FcSet) -> BlockPartition {
        let n = self.primary_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for a in g.members().iter() {
            for p in 0..n {
                for q in 0..n {
                    if self.coefficient(a, p, q) > 0 {
                        let rp = find(&mut parent, p);
                        let rq = find(&mut parent, q);
                        if rp != rq {
                            parent[rp.max(rq)] = rp.min(rq);
                        }
                    }
                }
            }
        }
        let mut blocks: Vec<PrimarySet> = Vec::new();
        let mut root_index: Vec<Option<usize>> = vec![None; n];
        for p in 0..n {
            let r = find(&mut parent, p);
            match root_index[r] {
                Some(i) => blocks[i].insert(p),
                None => {
                    root_index[r] = Some(blocks.len());
                    blocks.push(PrimarySet::singleton(p));
                }
            }
        }
        blocks.sort_by_key(|b| b.min_member());
        BlockPartition {
            owner: g.members(),
            blocks,
        }
    }

    /// Evaluates both orthogonality relations over all pairs.
    pub fn orthogonality_report(&self, parts: &ClassPartition) -> OrthogonalityReport {
        let members = &parts.g_members;
        let k = members.len();
        let mut row_residual = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                let mut sum = Complex64::new(0.0, 0.0);
                for (c, chi) in parts.chars.iter().enumerate() {
                    sum += chi[i] * chi[j].conj() / parts.extents[c];
                }
                let target = Complex64::new(f64::from(i == j), 0.0);
                row_residual = row_residual.max((sum - target).norm());
            }
        }
        let mut column_residual = 0.0f64;
        for c1 in 0..parts.class_count() {
            for c2 in 0..parts.class_count() {
                let mut sum = Complex64::new(0.0, 0.0);
                for i in 0..k {
                    sum += parts.chars[c1][i] * parts.chars[c2][i].conj();
                }
                let target = if c1 == c2 {
                    Complex64::new(parts.extents[c1], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                column_residual = column_residual.max((sum - target).norm());
            }
        }
        OrthogonalityReport {
            row_residual,
            column_residual,
        }
    }

    /// The matrices of the block representation: the fusion matrices of the
    /// members of g restricted to the rows and columns of one block.
    ///
    /// Restriction is exact because blocks are invariant subspaces, and the
    /// restricted family satisfies the same integer product rules, which is
    /// asserted here.
    pub fn block_representation(
        &self,
        g: &FcSet,
        block: &PrimarySet,
    ) -> Result<Vec<(usize, Vec<Vec<u32>>)>> {
        let rows: Vec<usize> = block.iter().collect();
        let k = rows.len();
        let restrict = |alpha: usize| -> Vec<Vec<u32>> {
            rows.iter()
                .map(|&q| rows.iter().map(|&r| self.coefficient(alpha, q, r)).collect())
                .collect()
        };
        // Invariance: fusing a block member by g never leaves the block.
        for alpha in g.members().iter() {
            for &q in &rows {
                for r in 0..self.primary_count() {
                    if self.coefficient(alpha, q, r) > 0 && !block.contains(r) {
                        return Err(Error::BlockClassMismatch {
                            detail: format!(
                                "{{{}}} is not invariant under fusion by {alpha}",
                                block.members_string()
                            ),
                        });
                    }
                }
            }
        }
        let family: Vec<(usize, Vec<Vec<u32>>)> = g
            .members()
            .iter()
            .map(|alpha| (alpha, restrict(alpha)))
            .collect();
        // Multiplicativity: N_b(a) N_b(b) = sum_c N_ab^c N_b(c), exactly.
        for (a, ma) in &family {
            for (b, mb) in &family {
                for i in 0..k {
                    for j in 0..k {
                        let mut lhs = 0u64;
                        for t in 0..k {
                            lhs += u64::from(ma[i][t]) * u64::from(mb[t][j]);
                        }
                        let mut rhs = 0u64;
                        for (c, mc) in &family {
                            rhs += u64::from(self.coefficient(*a, *b, *c)) * u64::from(mc[i][j]);
                        }
                        // Contributions from members of g only; c outside b's
                        // reach never hits the block.
                        for c in 0..self.primary_count() {
                            if !g.contains(c) && self.coefficient(*a, *b, c) > 0 {
                                // c outside g cannot appear: g is closed.
                                return Err(Error::BlockClassMismatch {
                                    detail: format!("fusion escaped the closed set at ({a},{b})"),
                                });
                            }
                        }
                        if lhs != rhs {
                            return Err(Error::BlockClassMismatch {
                                detail: format!(
                                    "restricted representation not multiplicative at ({a},{b})"
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(family)
    }

    /// Overlap of a block with a class: the multiplicity of the class
    /// character in the block representation. Computed from the traces via
    /// the orthogonality relations and, when an S-matrix is available,
    /// cross-checked against the sum of |S_pq|^2 over the rectangle.
    pub fn overlap(
        &self,
        parts: &ClassPartition,
        blocks: &BlockPartition,
        block: usize,
        class: usize,
    ) -> Result<u64> {
        let tol = self.tolerance();
        let b = &blocks.blocks[block];
        // Trace route: tr Delta_b(N(a)) = sum_C m_C chi_C(a); solve with the
        // second orthogonality relation.
        let mut m = Complex64::new(0.0, 0.0);
        for (i, &alpha) in parts.g_members.iter().enumerate() {
            let trace: f64 = b
                .iter()
                .map(|q| f64::from(self.coefficient(alpha, q, q)))
                .sum();
            m += trace * parts.chars[class][i].conj();
        }
        m /= parts.extents[class];
        if m.im.abs() > 1e-7 {
            return Err(Error::NonIntegralOverlap {
                block,
                class,
                value: m.im,
            });
        }
        let via_mult = m.re;
        if (via_mult - via_mult.round()).abs() > (1e-7f64).max(tol) || via_mult.round() < 0.0 {
            return Err(Error::NonIntegralOverlap {
                block,
                class,
                value: via_mult,
            });
        }
        let result = via_mult.round() as u64;

        if let Some(s) = self.smatrix() {
            let n = self.primary_count();
            let mut via_s = 0.0f64;
            for p in b.iter() {
                for q in parts.classes[class].iter() {
                    via_s += s[p * n + q].norm_sqr();
                }
            }
            if (via_s - via_mult).abs() > 1e-7 {
                return Err(Error::OverlapMismatch {
                    block,
                    class,
                    via_smatrix: via_s,
                    via_multiplicity: via_mult,
                });
            }
            if (via_s - via_s.round()).abs() > (1e-7f64).max(tol) {
                return Err(Error::NonIntegralOverlap {
                    block,
                    class,
                    value: via_s,
                });
            }
        }
        Ok(result)
    }

    /// All overlaps of g at once, with the row-sum consistency check
    /// `sum_C <b,C> = |b|`.
    pub fn overlap_matrix(
        &self,
        parts: &ClassPartition,
        blocks: &BlockPartition,
    ) -> Result<OverlapMatrix> {
        let mut entries = Vec::with_capacity(blocks.block_count());
        for b in 0..blocks.block_count() {
            let mut row = Vec::with_capacity(parts.class_count());
            for c in 0..parts.class_count() {
                row.push(self.overlap(parts, blocks, b, c)?);
            }
            let total: u64 = row.iter().sum();
            if total != blocks.blocks[b].len() as u64 {
                return Err(Error::BlockClassMismatch {
                    detail: format!(
                        "overlaps of block {b} sum to {total}, expected {}",
                        blocks.blocks[b].len()
                    ),
                });
            }
            entries.push(row);
        }
        Ok(OverlapMatrix { entries })
    }

    /// Extent of an arbitrary non-empty subset of primaries: the global
    /// squared dimension divided by the squared dimension of the subset.
    pub fn subset_extent(&self, set: &PrimarySet) -> f64 {
        assert!(!set.is_empty(), "extent of the empty set is undefined");
        let part: f64 = set.iter().map(|p| self.dim(p) * self.dim(p)).sum();
        self.total_dim_sq() / part
    }
}
