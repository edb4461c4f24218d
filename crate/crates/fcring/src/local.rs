//! Locality, twisters, the Ramond class, weight congruences, nilpotency,
//! integrality and the character-ring property checks.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::fcset::{ClassPartition, FcSet};
use crate::lattice::FcLattice;
use crate::ring::FusionRing;

/// Everything the locality analysis knows about one fusion-closed set.
#[derive(Debug, Clone)]
pub struct LocalityProfile {
    pub members: crate::set::PrimarySet,
    pub dual: crate::set::PrimarySet,
    pub is_local: bool,
    /// Only meaningful when weights are present; a non-local set is never a
    /// twister.
    pub is_twister: Option<bool>,
    pub ramond_class: Option<usize>,
    pub is_nilpotent: bool,
    pub nilpotency_chain: Vec<crate::set::PrimarySet>,
    pub is_integral: bool,
    /// Extent of the trivial class.
    pub dual_extent: f64,
    pub properties: PropertyReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Nothing to check (for example no element of dimension above one).
    Vacuous,
    /// Evaluated on a non-integral set; reported but not a contract.
    Informational,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Vacuous => "vacuous",
            CheckStatus::Informational => "info",
        }
    }

    pub fn is_hard_failure(&self) -> bool {
        matches!(self, CheckStatus::Fail)
    }
}

/// Results of the four character-ring checks.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub integral: bool,
    /// Every class extent is an integer dividing the trivial extent.
    pub extents_divide: CheckStatus,
    /// Every dimension divides the trivial extent over the center order.
    pub dims_divide: CheckStatus,
    /// Every element of dimension above one vanishes on some class.
    pub has_character_zero: CheckStatus,
    /// Coprimality forces |alpha(C)| to be d_alpha or zero.
    pub coprime_dichotomy: CheckStatus,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn statuses(&self) -> [(&'static str, CheckStatus); 4] {
        [
            ("extents_divide", self.extents_divide),
            ("dims_divide", self.dims_divide),
            ("has_character_zero", self.has_character_zero),
            ("coprime_dichotomy", self.coprime_dichotomy),
        ]
    }

    pub fn hard_failure(&self) -> bool {
        self.statuses().iter().any(|(_, s)| s.is_hard_failure())
    }
}

#[derive(Debug, Clone)]
pub struct WeightCongruenceReport {
    /// Triples (alpha, beta, gamma) inside g with a non-integral weight
    /// difference h_gamma - h_alpha - h_beta.
    pub violations: Vec<(usize, usize, usize)>,
    /// Members of g whose weight is not a half-integer.
    pub non_half_integral: Vec<usize>,
}

impl WeightCongruenceReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.non_half_integral.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct DivisorScanReport {
    pub trivial_extent: u64,
    /// (divisor, witness subset) pairs; the witness is a fusion-closed
    /// subset of g whose trivial-class extent equals the divisor.
    pub witnesses: Vec<(u64, Option<crate::set::PrimarySet>)>,
}

fn is_int(r: &Rational64) -> bool {
    r.is_integer()
}

fn is_half_int(r: &Rational64) -> bool {
    (r * 2).is_integer()
}

impl FusionRing {
    /// Containment in the dual, cross-checked against the refinement of
    /// classes into blocks.
    pub fn is_local(&self, g: &FcSet) -> Result<bool> {
        let dual = self.dual(g)?;
        let via_inclusion = g.is_subset_of(&dual);
        let parts = self.classes(g)?;
        let blocks = self.blocks(g)?;
        let via_refinement = parts.classes.iter().all(|class| {
            blocks
                .blocks
                .iter()
                .filter(|b| !b.intersect(class).is_empty())
                .all(|b| b.is_subset_of(class))
        });
        if via_inclusion != via_refinement {
            return Err(Error::LocalityCriteriaMismatch {
                g: g.members_string(),
                via_inclusion,
                via_refinement,
            });
        }
        Ok(via_inclusion)
    }

    /// All weights of a local set integral.
    pub fn is_twister(&self, g: &FcSet) -> Result<bool> {
        let weights = self.weights().ok_or(Error::MissingWeights)?;
        Ok(g.members().iter().all(|a| is_int(&weights[a])))
    }

    /// The central class of order at most two whose quotient is a twister.
    /// Defined for local sets that are not twisters themselves.
    pub fn ramond_class(&self, g: &FcSet) -> Result<usize> {
        let weights = self.weights().ok_or(Error::MissingWeights)?;
        let parts = self.classes(g)?;
        let center = self.center(g, &parts)?;
        let mut candidates = Vec::new();
        for (pos, &class) in center.central_classes.iter().enumerate() {
            if center.mult[pos][pos] != center.identity {
                continue;
            }
            let quotient = self.central_quotient(g, &parts, &center, &subgroup_of(&center, pos))?;
            if self.is_twister(&quotient)? {
                candidates.push(class);
            }
        }
        match candidates.len() {
            0 => Err(Error::NoRamondClass {
                g: g.members_string(),
            }),
            1 => {
                let r = candidates[0];
                self.verify_ramond_block_criteria(g, &parts, r, weights)?;
                Ok(r)
            }
            _ => Err(Error::AmbiguousRamondClass {
                g: g.members_string(),
                candidates,
            }),
        }
    }

    /// Block criteria for the Ramond class: a block lies inside it exactly
    /// when the weights of its members agree modulo integers, and the
    /// trivial and Ramond classes contain the same number of blocks.
    fn verify_ramond_block_criteria(
        &self,
        g: &FcSet,
        parts: &ClassPartition,
        ramond: usize,
        weights: &[Rational64],
    ) -> Result<()> {
        let blocks = self.blocks(g)?;
        for block in &blocks.blocks {
            let in_ramond = block.is_subset_of(&parts.classes[ramond]);
            let members: Vec<usize> = block.iter().collect();
            let integral_diffs = members
                .iter()
                .all(|&p| is_int(&(weights[p] - weights[members[0]])));
            if in_ramond != integral_diffs {
                return Err(Error::BlockClassMismatch {
                    detail: format!(
                        "block {{{}}}: inside Ramond class = {in_ramond} but integral weight \
                         differences = {integral_diffs}",
                        block.members_string()
                    ),
                });
            }
        }
        let in_trivial = blocks
            .blocks
            .iter()
            .filter(|b| b.is_subset_of(&parts.classes[parts.trivial_class]))
            .count();
        let in_ramond = blocks
            .blocks
            .iter()
            .filter(|b| b.is_subset_of(&parts.classes[ramond]))
            .count();
        if in_trivial != in_ramond {
            return Err(Error::BlockClassMismatch {
                detail: format!(
                    "{in_trivial} blocks in the trivial class vs {in_ramond} in the Ramond class"
                ),
            });
        }
        Ok(())
    }

    /// Weight additivity inside a local set, in exact rational arithmetic.
    pub fn weight_congruence_report(&self, g: &FcSet) -> Result<WeightCongruenceReport> {
        let weights = self.weights().ok_or(Error::MissingWeights)?;
        let n = self.primary_count();
        let mut violations = Vec::new();
        for a in g.members().iter() {
            for b in g.members().iter() {
                for c in 0..n {
                    if self.coefficient(a, b, c) > 0 && !is_int(&(weights[c] - weights[a] - weights[b])) {
                        violations.push((a, b, c));
                    }
                }
            }
        }
        let non_half_integral: Vec<usize> = g
            .members()
            .iter()
            .filter(|&a| !is_half_int(&weights[a]))
            .collect();
        Ok(WeightCongruenceReport {
            violations,
            non_half_integral,
        })
    }

    /// Iterates the maximal central quotient. The set is nilpotent when the
    /// chain reaches the vacuum; the chain is returned either way.
    pub fn is_nilpotent(&self, g: &FcSet) -> Result<(bool, Vec<FcSet>)> {
        let mut chain = vec![*g];
        let mut current = *g;
        loop {
            if current.len() == 1 {
                return Ok((true, chain));
            }
            let parts = self.classes(&current)?;
            let center = self.center(&current, &parts)?;
            let all: Vec<usize> = (0..center.order()).collect();
            let next = self.central_quotient(&current, &parts, &center, &all)?;
            if next.len() >= current.len() {
                // Trivial center: the quotient stalls.
                return Ok((false, chain));
            }
            chain.push(next);
            current = next;
        }
    }

    /// All members of g have integral quantum dimension.
    pub fn is_integral(&self, g: &FcSet) -> bool {
        g.members()
            .iter()
            .all(|a| self.is_integral_value(self.dim(a)))
    }

    /// The four character-ring checks. They are contracts for integral sets
    /// and informational otherwise.
    pub fn verify_character_properties(&self, g: &FcSet) -> Result<PropertyReport> {
        let parts = self.classes(g)?;
        let center = self.center(g, &parts)?;
        let integral = self.is_integral(g);
        let mut notes = Vec::new();

        let downgrade = |status: CheckStatus| -> CheckStatus {
            match (integral, status) {
                (false, CheckStatus::Fail) => CheckStatus::Informational,
                _ => status,
            }
        };

        let triv_extent = parts.extents[parts.trivial_class];
        let triv_int = self.is_integral_value(triv_extent);
        let triv_rounded = triv_extent.round() as i64;

        // 1: every extent is an integer dividing the trivial extent.
        let mut extents_divide = CheckStatus::Pass;
        if !triv_int {
            notes.push(format!("trivial extent {triv_extent} is not integral"));
            extents_divide = CheckStatus::Fail;
        } else {
            for (c, e) in parts.extents.iter().enumerate() {
                if !self.is_integral_value(*e) {
                    notes.push(format!("extent of class {c} is {e}, not integral"));
                    extents_divide = CheckStatus::Fail;
                } else if triv_rounded % (e.round() as i64) != 0 {
                    notes.push(format!(
                        "extent {} of class {c} does not divide {triv_rounded}",
                        e.round()
                    ));
                    extents_divide = CheckStatus::Fail;
                }
            }
        }

        // 2: every dimension divides trivial extent / center order.
        let mut dims_divide = CheckStatus::Pass;
        let z = center.order() as i64;
        if !triv_int || triv_rounded % z != 0 {
            notes.push(format!(
                "trivial extent {triv_extent} is not an integral multiple of the center order {z}"
            ));
            dims_divide = CheckStatus::Fail;
        } else {
            let bound = triv_rounded / z;
            for a in g.members().iter() {
                let d = self.dim(a);
                if !self.is_integral_value(d) {
                    notes.push(format!("dimension of {a} is {d}, not integral"));
                    dims_divide = CheckStatus::Fail;
                } else if bound % (d.round() as i64) != 0 {
                    notes.push(format!(
                        "dimension {} of {a} does not divide {bound}",
                        d.round()
                    ));
                    dims_divide = CheckStatus::Fail;
                }
            }
        }

        // 3: an element of dimension above one vanishes somewhere.
        let mut bigs = 0usize;
        let mut has_character_zero = CheckStatus::Pass;
        for (i, &a) in parts.g_members.iter().enumerate() {
            if self.dim(a) <= 1.0 + self.tolerance() {
                continue;
            }
            bigs += 1;
            let vanishes = (0..parts.class_count())
                .any(|c| parts.chars[c][i].norm() < self.tolerance());
            if !vanishes {
                notes.push(format!("element {a} has dimension above one but never vanishes"));
                has_character_zero = CheckStatus::Fail;
            }
        }
        if bigs == 0 && has_character_zero == CheckStatus::Pass {
            has_character_zero = CheckStatus::Vacuous;
        }

        // 4: coprimality dichotomy.
        let mut pairs = 0usize;
        let mut coprime_dichotomy = CheckStatus::Pass;
        if triv_int {
            for (i, &a) in parts.g_members.iter().enumerate() {
                let d = self.dim(a);
                if !self.is_integral_value(d) {
                    notes.push(format!(
                        "coprimality check skipped for {a}: dimension {d} not integral"
                    ));
                    continue;
                }
                let d_int = d.round() as i64;
                for c in 0..parts.class_count() {
                    let ext = parts.extents[c];
                    if !self.is_integral_value(ext) {
                        continue;
                    }
                    let ratio = triv_rounded / ext.round() as i64;
                    if num_integer::gcd(ratio, d_int) != 1 {
                        continue;
                    }
                    pairs += 1;
                    let value = parts.chars[c][i].norm();
                    let at_dim = (value - d).abs() < self.tolerance() * (1.0 + d);
                    let at_zero = value < self.tolerance();
                    if !at_dim && !at_zero {
                        notes.push(format!(
                            "element {a} on class {c}: |value| = {value}, neither 0 nor {d}"
                        ));
                        coprime_dichotomy = CheckStatus::Fail;
                    }
                }
            }
        } else {
            coprime_dichotomy = CheckStatus::Fail;
            notes.push("coprimality check needs an integral trivial extent".into());
        }
        if pairs == 0 && coprime_dichotomy == CheckStatus::Pass {
            coprime_dichotomy = CheckStatus::Vacuous;
        }

        Ok(PropertyReport {
            integral,
            extents_divide: downgrade(extents_divide),
            dims_divide: downgrade(dims_divide),
            has_character_zero: downgrade(has_character_zero),
            coprime_dichotomy: downgrade(coprime_dichotomy),
            notes,
        })
    }

    /// For every divisor of the trivial extent of a nilpotent set, searches
    /// the lattice for a contained set whose trivial extent equals the
    /// divisor. Exploratory output.
    pub fn nilpotent_divisor_scan(
        &self,
        g: &FcSet,
        lattice: &FcLattice,
    ) -> Result<DivisorScanReport> {
        let parts = self.classes(g)?;
        let triv = parts.extents[parts.trivial_class];
        if !self.is_integral_value(triv) {
            return Err(Error::NonIntegralInputs {
                detail: format!("trivial extent {triv} of {{{}}}", g.members_string()),
            });
        }
        let triv = triv.round() as u64;
        let mut witnesses = Vec::new();
        for d in 1..=triv {
            if !triv.is_multiple_of(d) {
                continue;
            }
            let mut witness = None;
            for i in 0..lattice.len() {
                let h = lattice.element(i);
                if !h.is_subset_of(&g.members()) {
                    continue;
                }
                let h_set = self.fcset(h)?;
                let h_parts = self.classes(&h_set)?;
                let e = h_parts.extents[h_parts.trivial_class];
                if self.is_integral_value(e) && e.round() as u64 == d {
                    witness = Some(h);
                    break;
                }
            }
            witnesses.push((d, witness));
        }
        Ok(DivisorScanReport {
            trivial_extent: triv,
            witnesses,
        })
    }

    /// Full locality profile of one fusion-closed set.
    pub fn locality_profile(&self, g: &FcSet) -> Result<LocalityProfile> {
        let parts = self.classes(g)?;
        let dual = self.dual(g)?;
        let is_local = self.is_local(g)?;
        let is_twister = match self.weights() {
            None => None,
            Some(_) => Some(is_local && self.is_twister(g)?),
        };
        let ramond_class = if is_local && is_twister == Some(false) {
            Some(self.ramond_class(g)?)
        } else {
            None
        };
        let (is_nilpotent, nilpotency_chain) = self.is_nilpotent(g)?;
        let chain_sets = nilpotency_chain.iter().map(|s| s.members()).collect();
        let properties = self.verify_character_properties(g)?;
        Ok(LocalityProfile {
            members: g.members(),
            dual: dual.members(),
            is_local,
            is_twister,
            ramond_class,
            is_nilpotent,
            nilpotency_chain: chain_sets,
            is_integral: self.is_integral(g),
            dual_extent: parts.extents[parts.trivial_class],
            properties,
        })
    }
}

fn subgroup_of(center: &crate::center::CenterGroup, pos: usize) -> Vec<usize> {
    let mut sub = vec![center.identity];
    let mut x = pos;
    while x != center.identity {
        sub.push(x);
        x = center.mult[x][pos];
    }
    sub.sort_unstable();
    sub.dedup();
    sub
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::PrimarySet;
    use crate::testdata;

    fn set(members: &[usize]) -> PrimarySet {
        PrimarySet::from_members(members.iter().copied())
    }

    #[test]
    fn locality_examples() {
        let ising = testdata::ising();
        let g = ising.fcset(set(&[0, 1])).unwrap();
        assert!(ising.is_local(&g).unwrap());
        assert!(!ising.is_local(&ising.full_fcset()).unwrap());
        assert!(ising.is_local(&ising.trivial_fcset()).unwrap());
    }

    #[test]
    fn twister_examples() {
        let ising = testdata::ising();
        let g = ising.fcset(set(&[0, 1])).unwrap();
        assert!(!ising.is_twister(&g).unwrap()); // h_eps = 1/2
        assert!(ising.is_twister(&ising.trivial_fcset()).unwrap());

        let toric = testdata::toric();
        let e_line = toric.fcset(set(&[0, 1])).unwrap();
        assert!(toric.is_twister(&e_line).unwrap());

        // The order-two subgroup of the z4 model carries weights 0 and 0.
        let z4 = testdata::z4();
        let sub = z4.fcset(set(&[0, 2])).unwrap();
        assert!(z4.is_local(&sub).unwrap());
        assert!(z4.is_twister(&sub).unwrap());
    }

    #[test]
    fn half_integer_weights_do_not_imply_locality() {
        // The fermion ring has weights 0 and 1/2 but its full set is not
        // local, so it is not a twister either.
        let z2 = testdata::z2();
        let full = z2.full_fcset();
        assert!(!z2.is_local(&full).unwrap());
        let weights = z2.weights().unwrap();
        assert!(weights.iter().all(|h| (h * 2).is_integer()));
    }

    #[test]
    fn ramond_class_of_the_ising_fermion_line() {
        let ising = testdata::ising();
        let g = ising.fcset(set(&[0, 1])).unwrap();
        let parts = ising.classes(&g).unwrap();
        let r = ising.ramond_class(&g).unwrap();
        assert_eq!(parts.classes[r], set(&[2]));
    }

    #[test]
    fn ramond_class_of_the_toric_fermion_line() {
        let toric = testdata::toric();
        let g = toric.fcset(set(&[0, 3])).unwrap();
        let parts = toric.classes(&g).unwrap();
        let r = toric.ramond_class(&g).unwrap();
        assert_eq!(parts.classes[r], set(&[1, 2]));
    }

    #[test]
    fn weight_congruence_on_local_sets() {
        let ising = testdata::ising();
        let g = ising.fcset(set(&[0, 1])).unwrap();
        let report = ising.weight_congruence_report(&g).unwrap();
        assert!(report.clean());

        let toric = testdata::toric();
        for members in [set(&[0, 1]), set(&[0, 2]), set(&[0, 3])] {
            let g = toric.fcset(members).unwrap();
            let report = toric.weight_congruence_report(&g).unwrap();
            assert!(report.clean());
        }
    }

    #[test]
    fn ising_maximal_set_is_nilpotent_with_the_expected_chain() {
        let ising = testdata::ising();
        let (nilpotent, chain) = ising.is_nilpotent(&ising.full_fcset()).unwrap();
        assert!(nilpotent);
        let members: Vec<PrimarySet> = chain.iter().map(|s| s.members()).collect();
        assert_eq!(members, vec![set(&[0, 1, 2]), set(&[0, 1]), set(&[0])]);
    }

    #[test]
    fn fibonacci_is_not_nilpotent() {
        let fib = testdata::fibonacci();
        let (nilpotent, chain) = fib.is_nilpotent(&fib.full_fcset()).unwrap();
        assert!(!nilpotent);
        assert_eq!(chain.len(), 1);
    }

    #[test]
    fn vacuum_set_is_nilpotent_with_no_steps() {
        let ising = testdata::ising();
        let (nilpotent, chain) = ising.is_nilpotent(&ising.trivial_fcset()).unwrap();
        assert!(nilpotent);
        assert_eq!(chain.len(), 1);
    }

    #[test]
    fn integrality_examples() {
        let ising = testdata::ising();
        assert!(ising.is_integral(&ising.fcset(set(&[0, 1])).unwrap()));
        assert!(!ising.is_integral(&ising.full_fcset()));
        let toric = testdata::toric();
        assert!(toric.is_integral(&toric.full_fcset()));
    }

    #[test]
    fn property_checks_on_ising_middle_set() {
        let ising = testdata::ising();
        let g = ising.fcset(set(&[0, 1])).unwrap();
        let report = ising.verify_character_properties(&g).unwrap();
        assert!(report.integral);
        assert_eq!(report.extents_divide, CheckStatus::Pass);
        assert_eq!(report.dims_divide, CheckStatus::Pass);
        assert_eq!(report.has_character_zero, CheckStatus::Vacuous);
        assert!(!report.hard_failure());
    }

    #[test]
    fn property_checks_on_rep_s3_full_set() {
        let ring = testdata::rep_s3();
        let g = ring.full_fcset();
        let report = ring.verify_character_properties(&g).unwrap();
        assert!(report.integral);
        assert_eq!(report.extents_divide, CheckStatus::Pass);
        assert_eq!(report.dims_divide, CheckStatus::Pass);
        // The two-dimensional element vanishes on the transposition class.
        assert_eq!(report.has_character_zero, CheckStatus::Pass);
        assert_eq!(report.coprime_dichotomy, CheckStatus::Pass);
    }

    #[test]
    fn non_integral_sets_report_informationally() {
        let fib = testdata::fibonacci();
        let report = fib
            .verify_character_properties(&fib.full_fcset())
            .unwrap();
        assert!(!report.integral);
        assert!(!report.hard_failure());
    }

    #[test]
    fn divisor_scan_on_ising() {
        let ising = testdata::ising();
        let lat = ising.enumerate_fcsets().unwrap();
        let report = ising
            .nilpotent_divisor_scan(&ising.full_fcset(), &lat)
            .unwrap();
        assert_eq!(report.trivial_extent, 4);
        let found: Vec<(u64, Option<String>)> = report
            .witnesses
            .iter()
            .map(|(d, w)| (*d, w.map(|s| s.members_string())))
            .collect();
        assert_eq!(
            found,
            vec![
                (1, Some("0".into())),
                (2, Some("0,1".into())),
                (4, Some("0,1,2".into())),
            ]
        );
    }

    #[test]
    fn profile_flags_for_ising() {
        let ising = testdata::ising();
        let g = ising.fcset(set(&[0, 1])).unwrap();
        let profile = ising.locality_profile(&g).unwrap();
        assert!(profile.is_local);
        assert_eq!(profile.is_twister, Some(false));
        assert!(profile.ramond_class.is_some());
        assert!(profile.is_nilpotent);
        assert!(profile.is_integral);
        assert!((profile.dual_extent - 2.0).abs() < 1e-9);
    }
}
