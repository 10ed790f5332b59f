//! Named property-check suites over randomized inputs, one suite per module.
//!
//! Each suite samples structures with a seeded generator and checks exact
//! identities that must hold for every input: chamber geometry and Weyl
//! group enumeration, character dimensions and multiplicities against the
//! partition-function alternating sum, branching dimension counts, parabolic
//! root splits, the dual twist and its cohomology, and the stabilization
//! scans. A suite returns one report per property so callers can print
//! per-property counts.

use crate::charring::{
    decompose, dual_weight, dualize_map, irrep_weights, restrict, tensor, tensor_klimyk,
};
use crate::induction::{
    bbw_cohomology, fernando_kac, nu_check, vz_bottom, vz_lambda, BbwCohomology, FkSupport,
};
use crate::parabolic::{compatible_parabolic, s_value, triangular_decomposition, TorusElement};
use crate::rng::SplitMix64;
use crate::rootdata::{Family, LieType, RootSystem, SignedPermutation, Weight};
use crate::stabilize::{finite_type_probe, stabilization_scan};
use crate::towers::{branch_diagonal, chain_torus_map, diagonal_torus_map, ChainSpec};
use crate::{Caps, Error, Result};
use std::collections::BTreeMap;

/// Outcome of one property: how many checks ran and which ones failed.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &'static str) -> CheckReport {
        CheckReport { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 16 {
            self.failures.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SUITE_NAMES: &[&str] =
    &["rootdata", "charring", "towers", "parabolic", "induction", "stabilize"];

/// Runs one suite and returns its per-property reports.
pub fn run_suite(name: &str, seed: u64, caps: &Caps) -> Result<Vec<CheckReport>> {
    match name {
        "rootdata" => Ok(vec![chamber_checks(seed), weyl_group_checks()]),
        "charring" => Ok(vec![
            character_checks(seed),
            tensor_checks(seed),
            dual_checks(seed),
            kostant_checks(seed),
        ]),
        "towers" => Ok(vec![branch_checks(seed, caps)]),
        "parabolic" => Ok(vec![split_checks(seed)]),
        "induction" => Ok(vec![
            twist_checks(seed),
            cohomology_checks(seed),
            bottom_checks(seed, caps),
            classification_checks(seed),
        ]),
        "stabilize" => Ok(vec![scan_checks(caps), probe_checks(caps)]),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite {other:?}; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

pub fn run_all(seed: u64, caps: &Caps) -> Result<Vec<(&'static str, Vec<CheckReport>)>> {
    SUITE_NAMES.iter().map(|name| Ok((*name, run_suite(name, seed, caps)?))).collect()
}

fn sample_systems() -> Vec<RootSystem> {
    vec![
        RootSystem::gl(2),
        RootSystem::gl(3),
        RootSystem::sl(3),
        RootSystem::simple(LieType { family: Family::B, rank: 2 }),
        RootSystem::simple(LieType { family: Family::C, rank: 3 }),
        RootSystem::simple(LieType { family: Family::D, rank: 3 }),
        RootSystem::product(
            vec![
                LieType { family: Family::GL, rank: 2 },
                LieType { family: Family::B, rank: 2 },
            ],
            false,
        )
        .unwrap(),
    ]
}

fn random_weight(rng: &mut SplitMix64, n: usize, lo: i64, hi: i64) -> Weight {
    Weight((0..n).map(|_| rng.range_i64(lo, hi)).collect())
}

fn random_dominant(sys: &RootSystem, rng: &mut SplitMix64, lo: i64, hi: i64) -> Weight {
    let w = random_weight(rng, sys.coords(), lo, hi);
    sys.canonicalize(&sys.dominant_rep(&w))
}

/// All elements of the Weyl group as signed permutations, each paired with
/// its determinant in the reflection representation. Intended for small
/// groups; the caller should keep the order at 48 or below.
pub fn weyl_elements(sys: &RootSystem) -> Vec<(SignedPermutation, i64)> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        fn rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                rec(items, k + 1, out);
                items.swap(k, i);
            }
        }
        rec(&mut items, 0, &mut out);
        out
    }
    fn perm_sign(perm: &[usize]) -> i64 {
        let mut inversions = 0usize;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    let n = sys.coords();
    let mut elements: Vec<(SignedPermutation, i64)> = vec![(SignedPermutation::identity(n), 1)];
    for (off, len, t) in sys.block_spans() {
        let mut block: Vec<(Vec<usize>, Vec<i64>, i64)> = Vec::new();
        for perm in permutations(len) {
            let base = perm_sign(&perm);
            match t.family {
                Family::GL | Family::A => block.push((perm, vec![1; len], base)),
                Family::B | Family::C | Family::D => {
                    for mask in 0..(1usize << len) {
                        let negs = mask.count_ones() as usize;
                        if t.family == Family::D && negs % 2 != 0 {
                            continue;
                        }
                        let signs: Vec<i64> =
                            (0..len).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                        let det = base * if negs % 2 == 0 { 1 } else { -1 };
                        block.push((perm.clone(), signs, det));
                    }
                }
            }
        }
        let mut next = Vec::with_capacity(elements.len() * block.len());
        for (w, det) in &elements {
            for (perm, signs, bdet) in &block {
                let mut w2 = w.clone();
                for i in 0..len {
                    w2.perm[off + i] = off + perm[i];
                    w2.signs[off + i] = signs[i];
                }
                next.push((w2, det * bdet));
            }
        }
        elements = next;
    }
    debug_assert_eq!(elements.len() as u128, sys.weyl_order());
    elements
}

/// Number of ways to write `beta` as a sum of positive roots with repetition.
pub fn kostant_partition(sys: &RootSystem, beta: &Weight) -> u128 {
    let roots = sys.positive_roots();
    // Pairing with a strictly decreasing positive vector is positive on every
    // positive root, so it bounds the multiset size and prunes dead ends.
    let n = sys.coords();
    let delta = Weight((0..n).map(|i| (n - i) as i64).collect());
    let phis: Vec<i64> = roots.iter().map(|r| delta.dot(r)).collect();
    fn count(
        roots: &[Weight],
        phis: &[i64],
        delta: &Weight,
        idx: usize,
        target: Weight,
        memo: &mut BTreeMap<(usize, Vec<i64>), u128>,
    ) -> u128 {
        if target.0.iter().all(|v| *v == 0) {
            return 1;
        }
        if idx == roots.len() {
            return 0;
        }
        let phi = delta.dot(&target);
        if phi <= 0 {
            return 0;
        }
        if let Some(v) = memo.get(&(idx, target.0.clone())) {
            return *v;
        }
        let mut total = 0u128;
        let mut rest = target.clone();
        loop {
            total += count(roots, phis, delta, idx + 1, rest.clone(), memo);
            if delta.dot(&rest) < phis[idx] {
                break;
            }
            rest = rest.sub(&roots[idx]);
        }
        memo.insert((idx, target.0), total);
        total
    }
    let mut memo = BTreeMap::new();
    count(&roots, &phis, &delta, 0, beta.clone(), &mut memo)
}

/// Weight multiplicity by the alternating sum of partition counts over the
/// Weyl group, using the dotted action to keep everything integral.
pub fn multiplicity_by_partition(sys: &RootSystem, lam: &Weight, mu: &Weight) -> i128 {
    let mut total: i128 = 0;
    for (w, det) in weyl_elements(sys) {
        let arg = sys.dot_act(&w, lam).sub(mu);
        total += det as i128 * kostant_partition(sys, &arg) as i128;
    }
    total
}

fn chamber_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("chamber");
    let mut rng = SplitMix64::new(seed ^ 0x1);
    let systems = sample_systems();
    for sys in &systems {
        let w0 = sys.longest_element();
        report.check(sys.length(&w0) == sys.n_positive_roots(), || {
            format!("{sys}: longest element misses {} inversions", sys.n_positive_roots())
        });
        report.check(w0.compose(&w0).is_identity(), || format!("{sys}: w0^2 is not the identity"));
        report.check(
            sys.length(&SignedPermutation::identity(sys.coords())) == 0,
            || format!("{sys}: identity has positive length"),
        );
    }
    for _ in 0..150 {
        let sys = &systems[rng.below(systems.len() as u64) as usize];
        let v = random_weight(&mut rng, sys.coords(), -4, 4);
        let dom = sys.dominant_rep(&v);
        report.check(sys.is_dominant(&dom), || format!("{sys}: dominant_rep({v}) = {dom}"));
        let orbit = sys.orbit(&v);
        report.check(
            orbit.contains(&dom),
            || format!("{sys}: orbit of {v} misses its dominant point"),
        );
        report.check(
            sys.weyl_order() % orbit.len() as u128 == 0,
            || format!("{sys}: orbit size {} does not divide the group order", orbit.len()),
        );
        let regular = orbit.len() as u128 == sys.weyl_order();
        match sys.sort_to_chamber(&v) {
            None => report.check(!regular, || format!("{sys}: {v} is regular but got no chamber")),
            Some((w, image)) => {
                report.check(regular, || format!("{sys}: {v} is singular but got a chamber"));
                report.check(
                    image == w.act(&v) && sys.is_dominant(&image),
                    || format!("{sys}: chamber image mismatch for {v}"),
                );
                report.check(
                    w.compose(&w.inverse()).is_identity(),
                    || format!("{sys}: inverse fails for the chamber element of {v}"),
                );
                let lam = random_weight(&mut rng, sys.coords(), -3, 3);
                report.check(
                    sys.dot_act(&SignedPermutation::identity(sys.coords()), &lam) == lam,
                    || format!("{sys}: dotted action of the identity moved {lam}"),
                );
            }
        }
    }
    report
}

fn weyl_group_checks() -> CheckReport {
    let mut report = CheckReport::new("weyl elements");
    for sys in sample_systems() {
        let elements = weyl_elements(&sys);
        report.check(
            elements.len() as u128 == sys.weyl_order(),
            || format!("{sys}: enumerated {} of {} elements", elements.len(), sys.weyl_order()),
        );
        let identities = elements.iter().filter(|(w, _)| w.is_identity()).count();
        report.check(identities == 1, || format!("{sys}: {identities} identity elements"));
        for (w, det) in &elements {
            let parity = if sys.length(w) % 2 == 0 { 1 } else { -1 };
            report.check(
                *det == parity,
                || format!("{sys}: determinant and length parity disagree on {w}"),
            );
        }
    }
    report
}

fn character_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("characters");
    let mut rng = SplitMix64::new(seed ^ 0x2);
    let systems = sample_systems();
    for _ in 0..40 {
        let sys = &systems[rng.below(systems.len() as u64) as usize];
        let lam = random_dominant(sys, &mut rng, -2, 3);
        let map = match irrep_weights(sys, &lam) {
            Ok(m) => m,
            Err(e) => {
                report.check(false, || format!("{sys}: irrep_weights({lam}) failed: {e}"));
                continue;
            }
        };
        let dim = sys.weyl_dim(&lam).unwrap();
        report.check(
            map.total_dim() == dim as i128,
            || format!("{sys}: V({lam}) has {} weights, formula says {dim}", map.total_dim()),
        );
        report.check(map.is_weyl_invariant(), || format!("{sys}: V({lam}) is not symmetric"));
        report.check(map.get(&lam) == 1, || format!("{sys}: top weight of V({lam}) not simple"));
        let dec = decompose(&map).unwrap();
        report.check(
            dec.length() == 1 && dec.get(&lam) == 1,
            || format!("{sys}: V({lam}) does not peel to itself"),
        );
    }
    report
}

fn tensor_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("tensor");
    let mut rng = SplitMix64::new(seed ^ 0x3);
    let systems = sample_systems();
    for _ in 0..30 {
        let sys = &systems[rng.below(systems.len() as u64) as usize];
        if sys.coords() > 4 {
            continue;
        }
        let lam = random_dominant(sys, &mut rng, -1, 2);
        let mu = random_dominant(sys, &mut rng, -1, 2);
        let direct = tensor(sys, &lam, &mu).unwrap();
        let folded = tensor_klimyk(sys, &lam, &mu).unwrap();
        report.check(
            direct.constituents() == folded.constituents(),
            || format!("{sys}: tensor formulas disagree on {lam} (x) {mu}"),
        );
        let expected = sys.weyl_dim(&lam).unwrap() * sys.weyl_dim(&mu).unwrap();
        report.check(
            direct.dim() == expected,
            || format!("{sys}: {lam} (x) {mu} has dim {}, expected {expected}", direct.dim()),
        );
    }
    report
}

fn dual_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("dual");
    let mut rng = SplitMix64::new(seed ^ 0x5);
    let systems = sample_systems();
    for _ in 0..30 {
        let sys = &systems[rng.below(systems.len() as u64) as usize];
        let lam = random_dominant(sys, &mut rng, -2, 2);
        let dual = dual_weight(sys, &lam);
        report.check(
            sys.weights_equal(&dual_weight(sys, &dual), &lam),
            || format!("{sys}: duality is not an involution on {lam}"),
        );
        let map = irrep_weights(sys, &lam).unwrap();
        let dec = decompose(&dualize_map(&map)).unwrap();
        report.check(
            dec.length() == 1 && dec.get(&dual) == 1,
            || format!("{sys}: dual of V({lam}) is not V({dual})"),
        );
    }
    report
}

fn kostant_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("kostant sums");
    let mut rng = SplitMix64::new(seed ^ 0x4);
    let systems = vec![
        RootSystem::gl(2),
        RootSystem::gl(3),
        RootSystem::simple(LieType { family: Family::B, rank: 2 }),
        RootSystem::simple(LieType { family: Family::C, rank: 2 }),
        RootSystem::simple(LieType { family: Family::D, rank: 3 }),
    ];
    for sys in &systems {
        for _ in 0..4 {
            let lam = random_dominant(sys, &mut rng, -1, 2);
            let map = irrep_weights(sys, &lam).unwrap();
            let support: Vec<Weight> = map.iter().map(|(w, _)| w.clone()).collect();
            for _ in 0..6 {
                let mu = if rng.below(4) == 0 {
                    random_weight(&mut rng, sys.coords(), -2, 2)
                } else {
                    support[rng.below(support.len() as u64) as usize].clone()
                };
                let expected = map.get(&mu) as i128;
                let got = multiplicity_by_partition(sys, &lam, &mu);
                report.check(
                    got == expected,
                    || format!("{sys}: mult of {mu} in V({lam}) is {expected}, sum gave {got}"),
                );
            }
        }
    }
    report
}

fn branch_checks(seed: u64, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new("tower branching");
    let mut rng = SplitMix64::new(seed ^ 0x6);
    for _ in 0..12 {
        let (p, theta) = [(1, 2), (2, 2), (2, 3), (3, 2)][rng.below(4) as usize];
        let big = RootSystem::gl(p * theta);
        let lam = random_dominant(&big, &mut rng, -1, 2);
        let dim = big.weyl_dim(&lam).unwrap();
        let map = irrep_weights(&big, &lam).unwrap();
        let over_small = restrict(&map, &diagonal_torus_map(p, theta)).unwrap();
        report.check(
            over_small.dim() == dim,
            || format!("gl({p}) in gl({}): branching loses dimension on {lam}", p * theta),
        );
        let over_commutant = branch_diagonal(p, theta, &lam, caps).unwrap();
        report.check(
            over_commutant.dim() == dim,
            || format!("commutant branching loses dimension on {lam}"),
        );
    }
    for (big, small) in [
        (LieType { family: Family::B, rank: 3 }, LieType { family: Family::B, rank: 2 }),
        (LieType { family: Family::C, rank: 3 }, LieType { family: Family::C, rank: 2 }),
        (LieType { family: Family::D, rank: 4 }, LieType { family: Family::D, rank: 3 }),
        (LieType { family: Family::GL, rank: 4 }, LieType { family: Family::GL, rank: 2 }),
    ] {
        let sys = RootSystem::simple(big);
        let lam = random_dominant(&sys, &mut rng, 0, 2);
        let dim = sys.weyl_dim(&lam).unwrap();
        let map = irrep_weights(&sys, &lam).unwrap();
        let dec = restrict(&map, &chain_torus_map(big, small).unwrap()).unwrap();
        report.check(
            dec.dim() == dim,
            || format!("{big} down to {small}: branching loses dimension on {lam}"),
        );
    }
    report
}

fn split_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("root splits");
    let mut rng = SplitMix64::new(seed ^ 0x7);
    let types = [
        LieType { family: Family::GL, rank: 3 },
        LieType { family: Family::GL, rank: 4 },
        LieType { family: Family::B, rank: 3 },
        LieType { family: Family::C, rank: 3 },
        LieType { family: Family::D, rank: 4 },
    ];
    for _ in 0..80 {
        let t = types[rng.below(types.len() as u64) as usize];
        let sys = RootSystem::simple(t);
        let entries: Vec<i64> = (0..sys.coords()).map(|_| rng.range_i64(-2, 2)).collect();
        let h = TorusElement::from_integers(&entries);
        let (u, levi, ubar) = triangular_decomposition(&sys, &h).unwrap();
        report.check(u.len() == ubar.len(), || {
            format!("{t}, h = {h}: nilradical sizes {} vs {}", u.len(), ubar.len())
        });
        report.check(
            u.len() + levi.len() + ubar.len() == 2 * sys.n_positive_roots(),
            || format!("{t}, h = {h}: root split does not cover all roots"),
        );
        let data = compatible_parabolic(t, &h).unwrap();
        report.check(
            data.dim_u() == u.len() && data.levi_roots.len() == levi.len(),
            || format!("{t}, h = {h}: parabolic disagrees with the raw root split"),
        );
        let levi_pos: usize = data.levi.n_positive_roots();
        report.check(
            2 * levi_pos == levi.len(),
            || format!("{t}, h = {h}: Levi type {} has wrong root count", data.levi),
        );
    }
    for _ in 0..30 {
        let p = 1 + rng.below(3) as usize;
        let q = 1 + rng.below(3) as usize;
        let k0 = RootSystem::product(
            vec![
                LieType { family: Family::GL, rank: p },
                LieType { family: Family::GL, rank: q },
            ],
            true,
        )
        .unwrap();
        let entries: Vec<i64> = (0..p + q).map(|_| rng.range_i64(-2, 2)).collect();
        let h = TorusElement::from_integers(&entries);
        let s = s_value(&k0, &h).unwrap();
        report.check(s <= p * q, || format!("pair ({p},{q}), h = {h}: s = {s} out of range"));
    }
    report
}

fn twist_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("dot twist");
    let mut rng = SplitMix64::new(seed ^ 0x8);
    for _ in 0..120 {
        let n = 2 + rng.below(4) as usize;
        let entries: Vec<i64> = (0..n).map(|_| rng.range_i64(-2, 2)).collect();
        let h = TorusElement::from_integers(&entries);
        let lam = vz_lambda(&h).unwrap();
        let sys = RootSystem::gl(n);
        let (u, levi, _) = triangular_decomposition(&sys, &h).unwrap();
        let mut sum = Weight::zero(n);
        for alpha in &u {
            sum = sum.add(alpha);
        }
        report.check(lam == sum.neg(), || {
            format!("h = {h}: twist {lam} is not the negated nilradical sum {}", sum.neg())
        });
        report.check(
            levi.iter().all(|alpha| lam.dot(alpha) == 0),
            || format!("h = {h}: twist {lam} pairs nontrivially with a Levi root"),
        );
        // The twist must be constant on level sets of h.
        let ok = (0..n).all(|i| {
            (0..n).all(|j| entries[i] != entries[j] || lam.0[i] == lam.0[j])
        });
        report.check(ok, || format!("h = {h}: twist {lam} separates equal eigenvalues"));
    }
    report
}

fn cohomology_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("cohomology");
    let mut rng = SplitMix64::new(seed ^ 0x9);
    let setups: Vec<(RootSystem, Vec<i64>)> = vec![
        (RootSystem::sl(2), vec![1, 0]),
        (RootSystem::gl(2), vec![1, 0]),
        (RootSystem::gl(3), vec![2, 1, 0]),
        (RootSystem::gl(3), vec![1, 1, 0]),
    ];
    for _ in 0..150 {
        let (k0, h_entries) = &setups[rng.below(setups.len() as u64) as usize];
        let n = k0.coords();
        let h = TorusElement::from_integers(h_entries);
        let s = s_value(k0, &h).unwrap();
        let nu = k0.canonicalize(&random_weight(&mut rng, n, -4, 4));
        // Vanishing happens exactly on the walls of the dotted action.
        let shifted = nu.add(&nu).add(&k0.two_rho());
        let singular = k0.sort_to_chamber(&shifted).is_none();
        let vee = nu_check(k0, &h, &nu).unwrap();
        match bbw_cohomology(k0, &nu).unwrap() {
            BbwCohomology::Zero => {
                report.check(singular, || format!("{k0}: nu = {nu} vanished off the walls"));
                report.check(
                    !k0.is_dominant(&vee),
                    || format!("{k0}, h = {h}: nu = {nu} vanishes but {vee} is dominant"),
                );
            }
            BbwCohomology::Class { degree, weight } => {
                report.check(!singular, || format!("{k0}: nu = {nu} survived a wall"));
                report.check(
                    degree <= k0.n_positive_roots() && k0.is_dominant(&weight),
                    || format!("{k0}: nu = {nu} gave degree {degree}, weight {weight}"),
                );
                if k0.is_dominant(&nu) {
                    report.check(
                        degree == 0 && k0.weights_equal(&weight, &nu),
                        || format!("{k0}: dominant nu = {nu} not returned in degree zero"),
                    );
                }
                if k0.is_dominant(&vee) {
                    report.check(
                        degree == s && k0.weights_equal(&weight, &vee),
                        || format!("{k0}, h = {h}, nu = {nu}: class is not {vee} in degree {s}"),
                    );
                }
            }
        }
        // The dual twist is injective on canonical weights.
        let nu2 = k0.canonicalize(&random_weight(&mut rng, n, -4, 4));
        if !k0.weights_equal(&nu, &nu2) {
            let vee2 = nu_check(k0, &h, &nu2).unwrap();
            report.check(
                !k0.weights_equal(&vee, &vee2),
                || format!("{k0}, h = {h}: {nu} and {nu2} share the image {vee}"),
            );
        }
    }
    report
}

fn bottom_checks(seed: u64, caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new("bottom layer");
    let mut rng = SplitMix64::new(seed ^ 0xA);
    for _ in 0..60 {
        let n = 2 + rng.below(3) as usize;
        let p = 1 + rng.below(n as u64 - 1) as usize;
        let q = n - p;
        let mut entries: Vec<i64> = (0..n).map(|_| rng.range_i64(-2, 2)).collect();
        entries[..p].sort_unstable_by(|x, y| y.cmp(x));
        entries[p..].sort_unstable_by(|x, y| y.cmp(x));
        let h = TorusElement::from_integers(&entries);
        match vz_bottom(p, q, &h, caps) {
            Ok(data) => report.check(
                data.dominant && data.multiplicity >= 1,
                || {
                    format!(
                        "({p},{q}), h = {h}: bottom layer {} has multiplicity {}",
                        data.lambda_p_vee, data.multiplicity
                    )
                },
            ),
            Err(e) => report.check(false, || format!("({p},{q}), h = {h}: {e}")),
        }
    }
    report
}

fn classification_checks(seed: u64) -> CheckReport {
    let mut report = CheckReport::new("block classification");
    let mut rng = SplitMix64::new(seed ^ 0xB);
    for _ in 0..300 {
        let n = 2 + rng.below(4) as usize;
        let p = 1 + rng.below(n as u64 - 1) as usize;
        let q = n - p;
        let entries: Vec<i64> = (0..n).map(|_| rng.range_i64(-2, 2)).collect();
        let h = TorusElement::from_integers(&entries);
        let mut a = 0usize;
        let mut b = 0usize;
        for i in 0..p {
            for j in p..n {
                if entries[i] < entries[j] {
                    a += 1;
                } else if entries[i] > entries[j] {
                    b += 1;
                }
            }
        }
        match fernando_kac(p, q, &h) {
            Err(Error::NotProper(_)) => report.check(
                a == 0 && b == 0,
                || format!("({p},{q}), h = {h}: flagged improper with counts ({a},{b})"),
            ),
            Err(e) => report.check(false, || format!("({p},{q}), h = {h}: {e}")),
            Ok(data) => {
                report.check(
                    (data.a, data.b) == (a, b),
                    || format!("({p},{q}), h = {h}: counts ({},{}) vs ({a},{b})", data.a, data.b),
                );
                let expected = match (a, b) {
                    (0, _) => FkSupport::KPlusR,
                    (_, 0) => FkSupport::KPlusRbar,
                    _ => FkSupport::KOnly,
                };
                report.check(
                    data.support == expected && (a, b) != (0, 0),
                    || format!("({p},{q}), h = {h}: case {} for counts ({a},{b})", data.support),
                );
            }
        }
    }
    report
}

fn scan_checks(caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new("power scans");
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for (a, b, c) in [(1, 0, 0), (1, 1, 0), (0, 1, 1)] {
            for k in 1..=2usize {
                let scan = match stabilization_scan(family, 2, 3, k, (a, b, c), caps) {
                    Ok(s) => s,
                    Err(e) => {
                        report.check(false, || format!("{family:?} ({a},{b},{c})^{k}: {e}"));
                        continue;
                    }
                };
                for level in &scan.levels {
                    if k == 1 {
                        report.check(
                            level.length == (a + b + c) as i64,
                            || {
                                format!(
                                    "{family:?} ({a},{b},{c}): rank {} has length {}",
                                    level.rank, level.length
                                )
                            },
                        );
                    }
                    // Dimensions of the constituents must add up to the full
                    // tensor power.
                    let t = match family {
                        Family::A => LieType { family: Family::GL, rank: level.rank + 1 },
                        f => LieType { family: f, rank: level.rank },
                    };
                    let sys = RootSystem::simple(t);
                    let mut e1 = vec![0i64; sys.coords()];
                    e1[0] = 1;
                    let dim_v = sys.weyl_dim(&Weight(e1)).unwrap() as i128;
                    let expected = ((a + b) as i128 * dim_v + c as i128).pow(k as u32);
                    let mut got: i128 = 0;
                    for (w, m) in &level.constituents {
                        got += *m as i128 * sys.weyl_dim(w).unwrap() as i128;
                    }
                    report.check(
                        got == expected,
                        || {
                            format!(
                                "{family:?} ({a},{b},{c})^{k}: rank {} sums to {got}, not {expected}",
                                level.rank
                            )
                        },
                    );
                }
                // Swapping natural and dual copies changes nothing when the
                // natural module is self-dual.
                if family != Family::A && a != b {
                    match stabilization_scan(family, 2, 3, k, (b, a, c), caps) {
                        Ok(swapped) => {
                            let same = swapped.n0 == scan.n0
                                && swapped
                                    .levels
                                    .iter()
                                    .zip(&scan.levels)
                                    .all(|(x, y)| x.length == y.length);
                            report.check(
                                same,
                                || format!("{family:?}: ({a},{b},{c}) and ({b},{a},{c}) differ"),
                            );
                        }
                        Err(e) => {
                            report.check(false, || format!("{family:?} ({b},{a},{c})^{k}: {e}"))
                        }
                    }
                }
            }
        }
    }
    report
}

fn probe_checks(caps: &Caps) -> CheckReport {
    let mut report = CheckReport::new("finite probes");
    let diagonal = ChainSpec::Diagonal { p: 2, thetas: vec![2, 2], levels: 4 };
    match finite_type_probe(&diagonal, &[1, -1], &[], 2, caps) {
        Ok(probe) => {
            report.check(
                probe.levels.iter().all(|l| l.analyzed),
                || "diagonal chain: trivial module skipped a level".into(),
            );
            report.check(
                probe.levels.iter().all(|l| l.lengths[0] == 1),
                || "diagonal chain: degree zero is not a single line".into(),
            );
            report.check(
                probe.finite_type && probe.bounded_per_t.iter().all(|b| *b),
                || format!("diagonal chain: degrees not bounded: {:?}", probe.bounded_per_t),
            );
        }
        Err(e) => report.check(false, || format!("diagonal chain: {e}")),
    }
    // The seeded module needs one more level: its degree-two lengths settle
    // only from the fourth commutant on.
    let longer = ChainSpec::Diagonal { p: 2, thetas: vec![2, 2], levels: 5 };
    match finite_type_probe(&longer, &[1, -1], &[Weight(vec![1, 0])], 2, caps) {
        Ok(probe) => {
            report.check(
                !probe.levels[0].analyzed && probe.levels.iter().skip(1).all(|l| l.analyzed),
                || "diagonal chain: wrong levels fit the seeded module".into(),
            );
            report.check(probe.finite_type, || "diagonal chain: seeded module unbounded".into());
        }
        Err(e) => report.check(false, || format!("seeded diagonal chain: {e}")),
    }
    let root = ChainSpec::Root { start: LieType { family: Family::A, rank: 2 }, levels: 3 };
    match finite_type_probe(&root, &[1], &[], 2, caps) {
        Ok(probe) => {
            // The opposite nilradical is one natural module over the tail, so
            // every symmetric power is a single irreducible.
            report.check(
                probe.levels.iter().all(|l| l.analyzed && l.lengths.iter().all(|len| *len == 1)),
                || "root chain: symmetric powers of the natural split".into(),
            );
            report.check(
                probe.levels.iter().all(|l| l.shape == Some((1, 0, 0))),
                || "root chain: tail shape is not a single natural".into(),
            );
        }
        Err(e) => report.check(false, || format!("root chain: {e}")),
    }
    report
}
