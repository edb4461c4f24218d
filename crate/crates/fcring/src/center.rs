//! Centers of fusion-closed sets, central quotients and central extensions.
//!
//! The central classes of g are those whose extent matches the trivial
//! class. They form a finite abelian group under the induced product, which
//! permutes all classes of g. Quotients by subgroups of the center are again
//! fusion closed, and extensions are obtained by dualizing quotients of the
//! dual.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fcset::{ClassPartition, FcSet};
use crate::ring::FusionRing;
use crate::set::PrimarySet;

/// The abelian group of central classes of a fusion-closed set.
#[derive(Debug, Clone)]
pub struct CenterGroup {
    pub owner: PrimarySet,
    /// Indices (into the class partition) of the central classes.
    pub central_classes: Vec<usize>,
    /// mult[i][j] = index into `central_classes` of the product.
    pub mult: Vec<Vec<usize>>,
    /// Index into `central_classes` of the trivial class.
    pub identity: usize,
    /// inv[i] = index into `central_classes` of the inverse.
    pub inv: Vec<usize>,
    /// action[i][c] = class index of the product of central class i with
    /// class c, for every class c of g.
    pub action: Vec<Vec<usize>>,
    /// Order of each central class in the group.
    pub orders: Vec<u64>,
    /// Invariant factor decomposition of the group, largest first.
    pub invariant_factors: Vec<u64>,
}

impl CenterGroup {
    pub fn order(&self) -> usize {
        self.central_classes.len()
    }

    /// Position of a class index within the central list, if central.
    pub fn central_position(&self, class: usize) -> Option<usize> {
        self.central_classes.iter().position(|&c| c == class)
    }
}

impl FusionRing {
    /// Central classes of g with their group structure.
    pub fn center(&self, g: &FcSet, parts: &ClassPartition) -> Result<CenterGroup> {
        let triv_extent = parts.extents[parts.trivial_class];

        let mut central = Vec::new();
        for (c, extent) in parts.extents.iter().enumerate() {
            let by_extent = (extent - triv_extent).abs() < 1e-7 * (1.0 + triv_extent);
            // |alpha(z)| = d_alpha for all alpha in g.
            let by_modulus = parts
                .g_members
                .iter()
                .enumerate()
                .all(|(i, &a)| (parts.chars[c][i].norm() - self.dim(a)).abs() < 1e-7 * (1.0 + self.dim(a)));
            if by_extent != by_modulus {
                return Err(Error::CenterCriteriaMismatch {
                    class: c,
                    detail: format!(
                        "extent criterion says {by_extent}, modulus criterion says {by_modulus}"
                    ),
                });
            }
            if by_extent {
                central.push(c);
            }
        }

        // Action of each central class on every class. The class character
        // of the image is the pointwise product of the two characters over
        // the dimension vector; a central character has unit-modulus ratios,
        // so this is again a character and must match exactly one class.
        //
        // For modular-compatible rings the same image is computed a second
        // way, from fusion products of representatives, and all
        // representative choices must agree. Without modular data the
        // representative products can spread over several classes, so only
        // the character route applies there.
        let n = self.primary_count();
        let class_of: Vec<usize> = (0..n).map(|p| parts.class_of(p)).collect();
        let char_image = |z: usize, c: usize| -> Result<usize> {
            let product: Vec<Complex64> = parts
                .g_members
                .iter()
                .enumerate()
                .map(|(i, &a)| parts.chars[z][i] * parts.chars[c][i] / self.dim(a))
                .collect();
            let mut matches = (0..parts.class_count()).filter(|&t| {
                parts.chars[t]
                    .iter()
                    .zip(&product)
                    .all(|(x, y)| (x - y).norm() < 1e-6 * (1.0 + x.norm()))
            });
            match (matches.next(), matches.next()) {
                (Some(t), None) => Ok(t),
                (found, _) => Err(Error::IllDefinedAction {
                    detail: format!(
                        "character product of central class {z} with class {c} matches {}",
                        if found.is_none() { "no class" } else { "several classes" }
                    ),
                }),
            }
        };
        let mut action = Vec::with_capacity(central.len());
        for &z in &central {
            let mut row = Vec::with_capacity(parts.class_count());
            for c in 0..parts.class_count() {
                let target = char_image(z, c)?;
                if self.modular_compatible() {
                    for q in parts.classes[z].iter() {
                        for p in parts.classes[c].iter() {
                            for (r, &r_class) in class_of.iter().enumerate() {
                                if self.coefficient(p, q, r) > 0 && r_class != target {
                                    return Err(Error::IllDefinedAction {
                                        detail: format!(
                                            "product of {p} (class {c}) with {q} (central class \
                                             {z}) lands in class {r_class} instead of {target}",
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
                row.push(target);
            }
            action.push(row);
        }

        // Multiplication table restricted to the central classes.
        let central_pos = |class: usize| -> Result<usize> {
            central
                .iter()
                .position(|&c| c == class)
                .ok_or_else(|| Error::IllDefinedAction {
                    detail: format!("product of central classes left the center (class {class})"),
                })
        };
        let k = central.len();
        let mut mult = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                mult[i][j] = central_pos(action[i][central[j]])?;
            }
        }
        // Commutativity, associativity and the compatibility of the action:
        // (z1 z2) C = z1 (z2 C).
        for i in 0..k {
            for j in 0..k {
                if mult[i][j] != mult[j][i] {
                    return Err(Error::IllDefinedAction {
                        detail: "central multiplication is not commutative".into(),
                    });
                }
                for c in 0..parts.class_count() {
                    if action[mult[i][j]][c] != action[i][action[j][c]] {
                        return Err(Error::IllDefinedAction {
                            detail: "central action is not associative on the classes".into(),
                        });
                    }
                }
            }
        }
        let identity = central_pos(parts.trivial_class)?;
        for (i, row) in mult.iter().enumerate() {
            let _ = row;
            if mult[identity][i] != i {
                return Err(Error::IllDefinedAction {
                    detail: "trivial class does not act as the identity".into(),
                });
            }
        }

        // Inverses through charge conjugation.
        let mut inv = vec![0usize; k];
        for (i, &z) in central.iter().enumerate() {
            let conj_set: PrimarySet = parts.classes[z].iter().map(|p| self.conjugate(p)).collect();
            let Some(zc) = parts.classes.iter().position(|c| *c == conj_set) else {
                return Err(Error::IllDefinedAction {
                    detail: format!("conjugate of central class {z} is not a class"),
                });
            };
            let pos = central_pos(zc)?;
            if mult[i][pos] != identity {
                return Err(Error::IllDefinedAction {
                    detail: format!("conjugate of central class {z} is not its inverse"),
                });
            }
            inv[i] = pos;
        }

        let orders: Vec<u64> = (0..k)
            .map(|i| {
                let mut x = i;
                let mut ord = 1u64;
                while x != identity {
                    x = mult[x][i];
                    ord += 1;
                }
                ord
            })
            .collect();
        let invariant_factors = invariant_factors_from_orders(&orders);

        Ok(CenterGroup {
            owner: g.members(),
            central_classes: central,
            mult,
            identity,
            inv,
            action,
            orders,
            invariant_factors,
        })
    }

    /// True when every class of g is central, equivalently when every member
    /// of g has quantum dimension one. Both criteria are evaluated.
    pub fn is_abelian(&self, g: &FcSet, parts: &ClassPartition, center: &CenterGroup) -> Result<bool> {
        let by_center = center.order() == parts.class_count();
        let by_dims = g
            .members()
            .iter()
            .all(|a| (self.dim(a) - 1.0).abs() < 1e-7);
        if by_center != by_dims {
            return Err(Error::AbelianCriteriaMismatch {
                detail: format!(
                    "center criterion says {by_center}, dimension criterion says {by_dims}"
                ),
            });
        }
        Ok(by_center)
    }

    /// Quotient of g by a subgroup of its center: the members on which every
    /// class of the subgroup takes its dimension value.
    ///
    /// `subgroup` lists positions within `center.central_classes`. The dual
    /// identity (the dual of the quotient is the union of the subgroup
    /// classes) is verified exactly.
    pub fn central_quotient(
        &self,
        g: &FcSet,
        parts: &ClassPartition,
        center: &CenterGroup,
        subgroup: &[usize],
    ) -> Result<FcSet> {
        verify_subgroup(center, subgroup)?;
        let mut members = PrimarySet::EMPTY;
        for (i, &a) in parts.g_members.iter().enumerate() {
            let keep = subgroup.iter().all(|&zi| {
                let class = center.central_classes[zi];
                (parts.chars[class][i] - Complex64::new(self.dim(a), 0.0)).norm()
                    < 1e-7 * (1.0 + self.dim(a))
            });
            if keep {
                members.insert(a);
            }
        }
        let quotient = self.fcset(members).map_err(|_| Error::BlockClassMismatch {
            detail: format!(
                "central quotient {{{}}} of {{{}}} is not fusion closed",
                members.members_string(),
                g.members_string()
            ),
        })?;
        // Dual of the quotient = union of the subgroup classes.
        let mut union = PrimarySet::EMPTY;
        for &zi in subgroup {
            union = union.union(&parts.classes[center.central_classes[zi]]);
        }
        let dual = self.dual(&quotient)?;
        if dual.members() != union {
            return Err(Error::BlockClassMismatch {
                detail: format!(
                    "dual of the quotient is {{{}}} but the subgroup classes are {{{}}}",
                    dual.members_string(),
                    union.members_string()
                ),
            });
        }
        Ok(quotient)
    }

    /// All subgroups of the center, as sorted lists of positions within
    /// `central_classes`.
    pub fn center_subgroups(&self, center: &CenterGroup) -> Vec<Vec<usize>> {
        let k = center.order();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        // Closure of every subset of generators. The center is tiny, so the
        // exponential sweep is fine.
        for mask in 0u64..(1u64 << k) {
            let gens: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let mut sub: BTreeSet<usize> = BTreeSet::new();
            sub.insert(center.identity);
            let mut frontier: Vec<usize> = vec![center.identity];
            while let Some(x) = frontier.pop() {
                for &gen in &gens {
                    let y = center.mult[x][gen];
                    if sub.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            seen.insert(sub.into_iter().collect());
        }
        seen.into_iter().collect()
    }

    /// Extensions of g by an abelian group given as a list of cyclic orders:
    /// one extension for each subgroup of the central blocks of g (the
    /// center of the dual) isomorphic to that group.
    pub fn central_extensions(&self, g: &FcSet, group_orders: &[u64]) -> Result<Vec<FcSet>> {
        let target = normalize_abelian_spec(group_orders);
        let dual = self.dual(g)?;
        let dual_parts = self.classes(&dual)?;
        let dual_center = self.center(&dual, &dual_parts)?;
        let mut extensions = Vec::new();
        for sub in self.center_subgroups(&dual_center) {
            let sub_orders: Vec<u64> = sub.iter().map(|&i| dual_center.orders[i]).collect();
            if invariant_factors_from_orders(&sub_orders) != target {
                continue;
            }
            let quotient = self.central_quotient(&dual, &dual_parts, &dual_center, &sub)?;
            let extension = self.dual(&quotient)?;
            // g must be recovered as a central quotient of the extension by
            // a subgroup isomorphic to the requested group.
            let ext_parts = self.classes(&extension)?;
            let ext_center = self.center(&extension, &ext_parts)?;
            let mut recovered = false;
            for esub in self.center_subgroups(&ext_center) {
                let esub_orders: Vec<u64> = esub.iter().map(|&i| ext_center.orders[i]).collect();
                if invariant_factors_from_orders(&esub_orders) != target {
                    continue;
                }
                let q = self.central_quotient(&extension, &ext_parts, &ext_center, &esub)?;
                if q.members() == g.members() {
                    recovered = true;
                    break;
                }
            }
            if !recovered {
                return Err(Error::BlockClassMismatch {
                    detail: format!(
                        "extension {{{}}} does not recover {{{}}} as a central quotient",
                        extension.members_string(),
                        g.members_string()
                    ),
                });
            }
            extensions.push(extension);
        }
        if extensions.is_empty() {
            return Err(Error::NoSuchExtension {
                spec: group_orders.to_vec(),
            });
        }
        extensions.sort();
        extensions.dedup();
        Ok(extensions)
    }

    /// The largest fusion-closed set having g as a central quotient: the
    /// dual of the maximal central quotient of the dual.
    pub fn maximal_central_extension(&self, g: &FcSet) -> Result<FcSet> {
        let dual = self.dual(g)?;
        let dual_parts = self.classes(&dual)?;
        let dual_center = self.center(&dual, &dual_parts)?;
        let all: Vec<usize> = (0..dual_center.order()).collect();
        let quotient = self.central_quotient(&dual, &dual_parts, &dual_center, &all)?;
        let extension = self.dual(&quotient)?;
        if !g.is_subset_of(&extension) {
            return Err(Error::BlockClassMismatch {
                detail: format!(
                    "maximal central extension {{{}}} does not contain {{{}}}",
                    extension.members_string(),
                    g.members_string()
                ),
            });
        }
        Ok(extension)
    }
}

fn verify_subgroup(center: &CenterGroup, subgroup: &[usize]) -> Result<()> {
    if !subgroup.contains(&center.identity) {
        return Err(Error::NotASubgroup {
            detail: "missing the identity".into(),
        });
    }
    for &i in subgroup {
        if i >= center.order() {
            return Err(Error::NotASubgroup {
                detail: format!("{i} is not a central class position"),
            });
        }
        if !subgroup.contains(&center.inv[i]) {
            return Err(Error::NotASubgroup {
                detail: format!("not closed under inverses at position {i}"),
            });
        }
        for &j in subgroup {
            if !subgroup.contains(&center.mult[i][j]) {
                return Err(Error::NotASubgroup {
                    detail: format!("not closed under products at positions ({i},{j})"),
                });
            }
        }
    }
    Ok(())
}

/// Canonical form of an abelian group spec: invariant factors, each dividing
/// the next, largest first. Orders of 1 are dropped.
pub fn normalize_abelian_spec(orders: &[u64]) -> Vec<u64> {
    // Build the multiset of prime powers, then recombine greedily.
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    for &o in orders {
        let mut rem = o.max(1);
        let mut p = 2u64;
        while p * p <= rem {
            if rem % p == 0 {
                let mut e = 0;
                while rem % p == 0 {
                    rem /= p;
                    e += 1;
                }
                prime_powers.push((p, e));
            }
            p += 1;
        }
        if rem > 1 {
            prime_powers.push((rem, 1));
        }
    }
    let primes: BTreeSet<u64> = prime_powers.iter().map(|&(p, _)| p).collect();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for p in primes {
        let mut exps: Vec<u32> = prime_powers
            .iter()
            .filter(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.into_iter().enumerate() {
            if columns.len() <= i {
                columns.push(Vec::new());
            }
            columns[i].push(p.pow(e));
        }
    }
    let mut factors: Vec<u64> = columns
        .into_iter()
        .map(|c| c.into_iter().product())
        .collect();
    factors.sort_unstable_by(|a, b| b.cmp(a));
    factors
}

/// Invariant factors of a finite abelian group, determined from the
/// multiset of element orders. The number of solutions of x^(p^k) = e per
/// prime p determines the p-part partition, which fixes the group type.
pub fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    if orders.len() <= 1 {
        return Vec::new();
    }
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for &o in orders {
        let mut rem = o;
        let mut p = 2u64;
        while p * p <= rem {
            if rem.is_multiple_of(p) {
                primes.insert(p);
                while rem % p == 0 {
                    rem /= p;
                }
            }
            p += 1;
        }
        if rem > 1 {
            primes.insert(rem);
        }
    }
    let p_part = |o: u64, p: u64| -> u64 {
        let mut part = 1u64;
        let mut rem = o;
        while rem.is_multiple_of(p) {
            rem /= p;
            part *= p;
        }
        part
    };
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        // conj[k-1] = number of cyclic factors of order >= p^k, read off the
        // ratios of the counts of solutions of x^(p^k) = e.
        let mut conj: Vec<u32> = Vec::new();
        let mut k = 1u32;
        let mut prev = orders.iter().filter(|&&o| p_part(o, p) == 1).count() as u64;
        loop {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| p_part(o, p) <= pk).count() as u64;
            if count == prev {
                break;
            }
            let mut ratio = count / prev;
            let mut log = 0u32;
            while ratio > 1 {
                ratio /= p;
                log += 1;
            }
            conj.push(log);
            prev = count;
            k += 1;
        }
        // Transpose: part i of the p-partition is the number of k with
        // conj[k-1] > i.
        let parts = conjugate_partition(&conj);
        for (i, e) in parts.into_iter().enumerate() {
            if columns.len() <= i {
                columns.push(Vec::new());
            }
            columns[i].push(p.pow(e));
        }
    }
    let mut factors: Vec<u64> = columns
        .into_iter()
        .map(|c| c.into_iter().product())
        .collect();
    factors.sort_unstable_by(|a, b| b.cmp(a));
    factors
}

fn conjugate_partition(parts: &[u32]) -> Vec<u32> {
    let max = parts.first().copied().unwrap_or(0);
    (1..=max)
        .map(|k| parts.iter().filter(|&&x| x >= k).count() as u32)
        .collect()
}
