//! The lattice of all fusion-closed sets of a ring.
//!
//! Every fusion-closed set is a join of closures of singletons, so the
//! lattice is enumerated by saturating the cyclic closures under pairwise
//! join. Meets are intersections; joins are computed both as the closure of
//! the union and through the duals, and the two must agree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fcset::FcSet;
use crate::ring::FusionRing;
use crate::set::PrimarySet;

/// Default cap on the number of lattice elements.
pub const DEFAULT_LATTICE_CAP: usize = 512;

#[derive(Debug, Clone)]
pub struct FcLattice {
    elements: Vec<PrimarySet>,
    index: BTreeMap<PrimarySet, usize>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    dual_map: Vec<usize>,
}

impl FcLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the trivial set is always present
    }

    pub fn element(&self, i: usize) -> PrimarySet {
        self.elements[i]
    }

    pub fn elements(&self) -> &[PrimarySet] {
        &self.elements
    }

    pub fn index_of(&self, set: &PrimarySet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn dual_index(&self, a: usize) -> usize {
        self.dual_map[a]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset_of(&self.elements[b])
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// Pairs (lower, upper) of the covering relation, for Hasse listings.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let strictly_between = (0..self.len()).any(|c| {
                    c != a && c != b && self.leq(a, c) && self.leq(c, b)
                });
                if !strictly_between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of a maximal chain from bottom to top.
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.len()];
        // elements are sorted by size, so a single pass suffices
        for b in 0..self.len() {
            for a in 0..b {
                if self.leq(a, b) && self.elements[a] != self.elements[b] {
                    h[b] = h[b].max(h[a] + 1);
                }
            }
        }
        h[self.top()]
    }
}

impl FusionRing {
    /// Enumerates all fusion-closed sets and builds the lattice tables.
    pub fn enumerate_fcsets(&self) -> Result<FcLattice> {
        self.enumerate_fcsets_capped(DEFAULT_LATTICE_CAP)
    }

    pub fn enumerate_fcsets_capped(&self, cap: usize) -> Result<FcLattice> {
        let n = self.primary_count();
        let mut elements: Vec<PrimarySet> = Vec::new();
        let push = |s: PrimarySet, elements: &mut Vec<PrimarySet>| -> bool {
            if elements.contains(&s) {
                false
            } else {
                elements.push(s);
                true
            }
        };
        for p in 0..n {
            let c = self.closure(PrimarySet::singleton(p)).members();
            push(c, &mut elements);
        }
        // Saturate under pairwise joins (closure of unions).
        loop {
            if elements.len() > cap {
                return Err(Error::LatticeTooLarge { cap });
            }
            let mut grew = false;
            let snapshot = elements.clone();
            for i in 0..snapshot.len() {
                for j in 0..i {
                    let joined = self.closure(snapshot[i].union(&snapshot[j])).members();
                    if push(joined, &mut elements) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        // Meets are intersections of fusion-closed sets, hence closed; but
        // intersections of joins may produce sets not seen yet.
        loop {
            if elements.len() > cap {
                return Err(Error::LatticeTooLarge { cap });
            }
            let mut grew = false;
            let snapshot = elements.clone();
            for i in 0..snapshot.len() {
                for j in 0..i {
                    let met = snapshot[i].intersect(&snapshot[j]);
                    debug_assert!(self.fcset(met).is_ok());
                    if push(met, &mut elements) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }

        elements.sort();
        let index: BTreeMap<PrimarySet, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i))
            .collect();

        let k = elements.len();
        let mut duals = Vec::with_capacity(k);
        for s in &elements {
            let g = self.fcset(*s)?;
            let d = self.dual(&g)?.members();
            let di = *index.get(&d).ok_or_else(|| Error::BlockClassMismatch {
                detail: format!(
                    "dual {{{}}} of {{{}}} is not in the enumerated lattice",
                    d.members_string(),
                    s.members_string()
                ),
            })?;
            duals.push(di);
        }
        for (i, &di) in duals.iter().enumerate() {
            if duals[di] != i {
                return Err(Error::BlockClassMismatch {
                    detail: format!(
                        "duality is not an involution at {{{}}}",
                        elements[i].members_string()
                    ),
                });
            }
        }

        let mut meet = vec![vec![0usize; k]; k];
        let mut join = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let m = elements[i].intersect(&elements[j]);
                meet[i][j] = *index.get(&m).ok_or_else(|| Error::BlockClassMismatch {
                    detail: "meet escaped the lattice".into(),
                })?;
                let via_closure = self.closure(elements[i].union(&elements[j])).members();
                // Join through the duals: dual(dual(g) meet dual(h)).
                let di = duals[i];
                let dj = duals[j];
                let dmeet = elements[di].intersect(&elements[dj]);
                let dmeet_idx =
                    *index.get(&dmeet).ok_or_else(|| Error::BlockClassMismatch {
                        detail: "dual meet escaped the lattice".into(),
                    })?;
                let via_duals = elements[duals[dmeet_idx]];
                if via_duals != via_closure {
                    return Err(Error::JoinFormulaMismatch {
                        g: elements[i].members_string(),
                        h: elements[j].members_string(),
                        via_duals: via_duals.members_string(),
                        via_closure: via_closure.members_string(),
                    });
                }
                join[i][j] = *index.get(&via_closure).ok_or_else(|| {
                    Error::BlockClassMismatch {
                        detail: "join escaped the lattice".into(),
                    }
                })?;
            }
        }

        Ok(FcLattice {
            elements,
            index,
            meet,
            join,
            dual_map: duals,
        })
    }
}

/// Result of the exhaustive lattice-law checks.
#[derive(Debug, Clone)]
pub struct ModularityReport {
    pub element_count: usize,
    pub modular: bool,
    pub modular_violations: Vec<(usize, usize, usize)>,
    pub distributive: bool,
    pub complemented: bool,
    pub height: usize,
}

/// Tests the modular law over all triples and reports distributivity and
/// complementedness as found.
pub fn check_modularity(lat: &FcLattice) -> ModularityReport {
    let k = lat.len();
    let mut violations = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if !lat.leq(a, b) {
                continue;
            }
            for x in 0..k {
                // a <= b implies a v (x ^ b) = (a v x) ^ b
                let lhs = lat.join(a, lat.meet(x, b));
                let rhs = lat.meet(lat.join(a, x), b);
                if lhs != rhs {
                    violations.push((a, x, b));
                }
            }
        }
    }
    let mut distributive = true;
    'outer: for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)) {
                    distributive = false;
                    break 'outer;
                }
            }
        }
    }
    let complemented = (0..k).all(|a| {
        (0..k).any(|x| lat.meet(a, x) == lat.bottom() && lat.join(a, x) == lat.top())
    });
    ModularityReport {
        element_count: k,
        modular: violations.is_empty(),
        modular_violations: violations,
        distributive,
        complemented,
        height: lat.height(),
    }
}

#[derive(Debug, Clone)]
pub struct IntervalCountReport {
    /// Number of g-classes contained in the dual of h.
    pub g_classes_in_dual_h: usize,
    /// Number of h-blocks contained in g.
    pub h_blocks_in_g: usize,
    pub counts_equal: bool,
    /// Every h-class is a union of g-classes.
    pub h_classes_refine: bool,
    /// Every g-block is a union of h-blocks.
    pub g_blocks_refine: bool,
}

/// Counting identity for nested fusion-closed sets h <= g, together with
/// the refinement statements.
pub fn interval_counting_check(
    ring: &FusionRing,
    h: &FcSet,
    g: &FcSet,
) -> Result<IntervalCountReport> {
    if !h.is_subset_of(g) {
        return Err(Error::Precondition(format!(
            "{{{}}} is not contained in {{{}}}",
            h.members_string(),
            g.members_string()
        )));
    }
    let g_classes = ring.classes(g)?;
    let h_classes = ring.classes(h)?;
    let g_blocks = ring.blocks(g)?;
    let h_blocks = ring.blocks(h)?;
    let dual_h = ring.dual(h)?;

    let g_classes_in_dual_h = g_classes
        .classes
        .iter()
        .filter(|c| c.is_subset_of(&dual_h.members()))
        .count();
    let h_blocks_in_g = h_blocks
        .blocks
        .iter()
        .filter(|b| b.is_subset_of(&g.members()))
        .count();

    let h_classes_refine = h_classes.classes.iter().all(|hc| {
        g_classes
            .classes
            .iter()
            .filter(|gc| !gc.intersect(hc).is_empty())
            .all(|gc| gc.is_subset_of(hc))
    });
    let g_blocks_refine = g_blocks.blocks.iter().all(|gb| {
        h_blocks
            .blocks
            .iter()
            .filter(|hb| !hb.intersect(gb).is_empty())
            .all(|hb| hb.is_subset_of(gb))
    });

    Ok(IntervalCountReport {
        g_classes_in_dual_h,
        h_blocks_in_g,
        counts_equal: g_classes_in_dual_h == h_blocks_in_g,
        h_classes_refine,
        g_blocks_refine,
    })
}
