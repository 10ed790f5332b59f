//! Length stabilization of tensor powers along rank chains, and finiteness
//! probes for symmetric powers of an opposite nilradical.
//!
//! The scan decomposes a fixed tensor power of a small module at every rank
//! of a family chain and compares constituents across ranks by padding their
//! highest weights. In family D a dominant weight can end negatively; such
//! constituents have no padded counterpart one rank up and are tracked as
//! transient, so stabilization requires them to die out.

use std::collections::BTreeMap;

use crate::charring::{convolve, decompose, irrep_weights, sym_powers, WeightMap};
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::towers::{chain_nbar_tail_map, diagonal_nbar_map, natural_rep_map, pad_weight, ChainSpec};
use crate::{Caps, Error, Result};

/// The base module with `a` copies of the natural representation, `b` of its
/// dual, and `c` trivial lines, as a weight map. In the self-dual families
/// the `a` and `b` copies coincide.
pub fn module_char(t: LieType, a: usize, b: usize, c: usize) -> WeightMap {
    let sys = RootSystem::simple(t);
    let n = sys.coords();
    let mut map = WeightMap::new(sys);
    match t.family {
        Family::GL | Family::A => {
            for i in 0..n {
                let mut up = vec![0i64; n];
                up[i] = 1;
                map.add(Weight(up.clone()), a as i64);
                up[i] = -1;
                map.add(Weight(up), b as i64);
            }
        }
        Family::B | Family::C | Family::D => {
            let natural = natural_rep_map(t);
            for (w, m) in natural.iter() {
                map.add(w.clone(), m * (a + b) as i64);
            }
        }
    }
    map.add(Weight::zero(n), c as i64);
    map
}

/// Constituent key used for cross-rank comparison: stable weights are padded
/// to the top rank of the scan, transient ones are tagged with their rank and
/// never match another level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScanKey {
    Stable(Weight),
    Transient { rank: usize, weight: Weight },
}

#[derive(Debug, Clone)]
pub struct LevelScan {
    pub rank: usize,
    pub length: i64,
    /// Dominant constituents at this rank, in their own coordinates.
    pub constituents: Vec<(Weight, i64)>,
    /// Constituents with a negative last coordinate (family D only).
    pub transient: Vec<(Weight, i64)>,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub family: Family,
    pub power: usize,
    pub module: (usize, usize, usize),
    pub levels: Vec<LevelScan>,
    /// First rank from which the padded constituents of every later level
    /// agree and no transients remain.
    pub n0: Option<usize>,
    /// Whether the agreement window covers at least two levels.
    pub stabilized: bool,
}

/// Algebra type scanned at a given rank: family A is realized as gl(rank+1)
/// so constituents are plain integer weights.
fn scan_type(family: Family, rank: usize) -> Result<LieType> {
    match family {
        Family::A => LieType::new(Family::GL, rank + 1),
        f => LieType::new(f, rank),
    }
}

/// Decomposes the k-th tensor power of the (a, b, c) module at each rank in
/// `start..start + levels` and locates the rank where the padded constituent
/// lists become constant.
pub fn stabilization_scan(
    family: Family,
    start: usize,
    levels: usize,
    power: usize,
    module: (usize, usize, usize),
    caps: &Caps,
) -> Result<ScanReport> {
    if levels == 0 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    if power == 0 {
        return Err(Error::InvalidArgument("the tensor power must be positive".into()));
    }
    if power > caps.max_k {
        return Err(Error::CapExceeded(format!(
            "tensor power {power} exceeds the cap {}",
            caps.max_k
        )));
    }
    let (a, b, c) = module;
    if a + b + c == 0 {
        return Err(Error::InvalidArgument("the module is zero".into()));
    }
    let top = scan_type(family, start + levels - 1)?;
    if top.matrix_size() > caps.matrix_size {
        return Err(Error::CapExceeded(format!(
            "top level {top} needs {}x{} matrices, cap is {}",
            top.matrix_size(),
            top.matrix_size(),
            caps.matrix_size
        )));
    }
    let mut level_scans = Vec::with_capacity(levels);
    let mut keyed: Vec<BTreeMap<ScanKey, i64>> = Vec::with_capacity(levels);
    for rank in start..start + levels {
        let t = scan_type(family, rank)?;
        let base = module_char(t, a, b, c);
        let mut powered = base.clone();
        for _ in 1..power {
            powered = convolve(&powered, &base);
        }
        let dec = decompose(&powered)?;
        let mut constituents = Vec::new();
        let mut transient = Vec::new();
        let mut keys = BTreeMap::new();
        for (w, m) in dec.constituents() {
            constituents.push((w.clone(), *m));
            if family == Family::D && *w.0.last().unwrap() < 0 {
                transient.push((w.clone(), *m));
                keys.insert(ScanKey::Transient { rank, weight: w.clone() }, *m);
            } else {
                keys.insert(ScanKey::Stable(pad_weight(t, top, w)?), *m);
            }
        }
        level_scans.push(LevelScan { rank, length: dec.length(), constituents, transient });
        keyed.push(keys);
    }
    let mut n0 = None;
    for i in 0..levels {
        if keyed[i..].iter().all(|k| *k == keyed[i]) {
            n0 = Some(start + i);
            break;
        }
    }
    let stabilized = match n0 {
        Some(rank) => start + levels - rank >= 2,
        None => false,
    };
    Ok(ScanReport { family, power, module, levels: level_scans, n0, stabilized })
}

#[derive(Debug, Clone)]
pub struct ProbeLevel {
    /// 1-based position in the chain.
    pub index: usize,
    /// Rank of the algebra the lengths are measured over: the commutant for
    /// diagonal chains, the tail subalgebra for root chains.
    pub rank: usize,
    /// Observed copies of (natural, dual, trivial) in the opposite
    /// nilradical over the tail, for root chains.
    pub shape: Option<(usize, usize, usize)>,
    /// Whether the seed weights fit at this level.
    pub analyzed: bool,
    /// Decomposition length of S^t(nbar) tensor E for t = 0..=t_max.
    pub lengths: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub spec: ChainSpec,
    pub t_max: usize,
    pub levels: Vec<ProbeLevel>,
    /// Per degree t: whether the lengths are constant on a terminal window
    /// of at least two analyzed levels.
    pub bounded_per_t: Vec<bool>,
    pub finite_type: bool,
}

/// Measures, along a chain, the decomposition length of each symmetric power
/// of the opposite nilradical tensored with a fixed module `E` built from
/// padded seed weights. Bounded lengths in every degree indicate that the
/// induced modules keep a finite constituent count along the chain.
pub fn finite_type_probe(
    spec: &ChainSpec,
    h: &[i64],
    seeds: &[Weight],
    t_max: usize,
    caps: &Caps,
) -> Result<ProbeReport> {
    if t_max > caps.max_t {
        return Err(Error::CapExceeded(format!(
            "degree {t_max} exceeds the cap {}",
            caps.max_t
        )));
    }
    let level_types = spec.level_types(caps)?;
    // (rank the lengths live over, nbar map, observed shape) per level.
    let mut level_data: Vec<(usize, WeightMap, Option<(usize, usize, usize)>)> = Vec::new();
    match spec {
        ChainSpec::Diagonal { p, .. } => {
            if h.len() != *p {
                return Err(Error::DimensionMismatch(format!(
                    "h has {} entries, p = {p}",
                    h.len()
                )));
            }
            for theta in spec.cumulative_thetas()? {
                let nbar = diagonal_nbar_map(*p, h, theta)?;
                level_data.push((theta, nbar, None));
            }
        }
        ChainSpec::Root { .. } => {
            let p = h.len();
            for t in &level_types {
                if t.coords() <= p {
                    return Err(Error::InvalidArgument(format!(
                        "level {t} leaves no tail after the first {p} coordinates"
                    )));
                }
                let (nbar, shape) = chain_nbar_tail_map(*t, p, h)?;
                let rank = t.coords() - p;
                level_data.push((rank, nbar, Some(shape)));
            }
        }
    }
    let mut levels = Vec::with_capacity(level_data.len());
    for (index, (rank, nbar, shape)) in level_data.into_iter().enumerate() {
        let tail_sys = nbar.sys().clone();
        let tail_type = {
            debug_assert_eq!(tail_sys.blocks().len(), 1);
            tail_sys.blocks()[0]
        };
        // Seeds are padded into the tail type; levels too small for a seed
        // are reported but not measured.
        let mut e_map = WeightMap::unit(tail_sys.clone());
        let mut fits = true;
        for seed in seeds {
            if seed.len() > tail_type.coords() {
                fits = false;
                break;
            }
            let from = LieType { family: tail_type.family, rank: seed.len() };
            let padded = pad_weight(from, tail_type, seed)?;
            e_map = convolve(&e_map, &irrep_weights(&tail_sys, &padded)?);
        }
        if !fits {
            levels.push(ProbeLevel { index: index + 1, rank, shape, analyzed: false, lengths: Vec::new() });
            continue;
        }
        let syms = sym_powers(&nbar, t_max);
        let mut lengths = Vec::with_capacity(t_max + 1);
        for sym in &syms {
            let product = convolve(sym, &e_map);
            lengths.push(decompose(&product)?.length());
        }
        levels.push(ProbeLevel { index: index + 1, rank, shape, analyzed: true, lengths });
    }
    let analyzed: Vec<&ProbeLevel> = levels.iter().filter(|l| l.analyzed).collect();
    let mut bounded_per_t = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        let series: Vec<i64> = analyzed.iter().map(|l| l.lengths[t]).collect();
        let bounded = series.len() >= 2 && {
            let last = *series.last().unwrap();
            series[series.len() - 2] == last
        };
        bounded_per_t.push(bounded);
    }
    let finite_type = !bounded_per_t.is_empty() && bounded_per_t.iter().all(|b| *b);
    Ok(ProbeReport { spec: spec.clone(), t_max, levels, bounded_per_t, finite_type })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wt(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn module_characters() {
        let m = module_char(LieType { family: Family::GL, rank: 2 }, 1, 1, 1);
        assert_eq!(m.total_dim(), 5);
        assert_eq!(m.get(&wt("[1,0]")), 1);
        assert_eq!(m.get(&wt("[-1,0]")), 1);
        assert_eq!(m.get(&wt("[0,0]")), 1);
        let m = module_char(LieType { family: Family::B, rank: 2 }, 1, 1, 1);
        // Two copies of the 5-dimensional natural module plus a line.
        assert_eq!(m.total_dim(), 11);
        assert_eq!(m.get(&wt("[0,0]")), 3);
        let m = module_char(LieType { family: Family::C, rank: 2 }, 1, 0, 2);
        assert_eq!(m.total_dim(), 6);
        assert_eq!(m.get(&wt("[0,0]")), 2);
    }

    #[test]
    fn square_of_natural_plus_dual_has_length_eight() {
        let caps = Caps::default();
        let report = stabilization_scan(Family::A, 1, 3, 2, (1, 1, 0), &caps).unwrap();
        for level in &report.levels {
            assert_eq!(level.length, 8, "rank {}", level.rank);
            assert!(level.transient.is_empty());
        }
        assert_eq!(report.n0, Some(1));
        assert!(report.stabilized);
    }

    #[test]
    fn orthogonal_square_stabilizes_immediately() {
        let caps = Caps::default();
        let report = stabilization_scan(Family::B, 2, 3, 2, (1, 0, 0), &caps).unwrap();
        // V (x) V = S^2 + Lambda^2 with a trivial line split off.
        for level in &report.levels {
            assert_eq!(level.length, 3);
        }
        assert_eq!(report.n0, Some(2));
        assert!(report.stabilized);
    }

    #[test]
    fn d_family_cube_sheds_transients() {
        let caps = Caps::default();
        let report = stabilization_scan(Family::D, 3, 3, 3, (1, 0, 0), &caps).unwrap();
        // so(6) has a dominant cube constituent ending negatively; it has no
        // counterpart at higher rank.
        assert!(!report.levels[0].transient.is_empty());
        assert!(report.levels[0]
            .transient
            .iter()
            .any(|(w, _)| w == &wt("[1,1,-1]")));
        assert!(report.levels[1].transient.is_empty());
        assert!(report.levels[2].transient.is_empty());
        assert_eq!(report.n0, Some(4));
        assert!(report.stabilized);
    }

    #[test]
    fn scan_caps_and_argument_errors() {
        let caps = Caps::default();
        assert!(matches!(
            stabilization_scan(Family::A, 1, 2, 9, (1, 0, 0), &caps),
            Err(Error::CapExceeded(_))
        ));
        assert!(stabilization_scan(Family::A, 1, 0, 2, (1, 0, 0), &caps).is_err());
        assert!(stabilization_scan(Family::A, 1, 2, 0, (1, 0, 0), &caps).is_err());
        assert!(stabilization_scan(Family::A, 1, 2, 2, (0, 0, 0), &caps).is_err());
        let tight = Caps { matrix_size: 4, ..caps };
        assert!(matches!(
            stabilization_scan(Family::B, 2, 3, 2, (1, 0, 0), &tight),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn root_chain_probe_stays_length_one() {
        let caps = Caps::default();
        let spec: ChainSpec = "root:A,start=2,levels=3".parse().unwrap();
        let report = finite_type_probe(&spec, &[1], &[], 3, &caps).unwrap();
        // The opposite nilradical is a single natural module over the tail,
        // so each symmetric power is one irreducible.
        for level in &report.levels {
            assert!(level.analyzed);
            assert_eq!(level.shape, Some((1, 0, 0)));
            assert_eq!(level.lengths, vec![1, 1, 1, 1]);
        }
        assert!(report.finite_type);
    }

    #[test]
    fn diagonal_probe_bounds_low_degrees() {
        let caps = Caps::default();
        let spec: ChainSpec = "glptheta:p=2,thetas=2,2,2".parse().unwrap();
        let report = finite_type_probe(&spec, &[1, -1], &[], 2, &caps).unwrap();
        assert_eq!(report.levels.len(), 4);
        // Degree one: adjoint plus trivial from the second level on.
        let ones: Vec<i64> = report.levels.iter().map(|l| l.lengths[1]).collect();
        assert_eq!(ones, vec![1, 2, 2, 2]);
        assert!(report.bounded_per_t[1]);
        assert!(report.bounded_per_t[2]);
        assert!(report.finite_type);
        // A seed that does not fit the first levels is skipped there.
        let report = finite_type_probe(&spec, &[1, -1], &[wt("[1,0,0,0]")], 1, &caps).unwrap();
        assert!(!report.levels[0].analyzed);
        assert!(!report.levels[1].analyzed);
        assert!(report.levels[2].analyzed);
        assert!(report.levels[3].analyzed);
        let too_deep = finite_type_probe(&spec, &[1, -1], &[], 9, &caps);
        assert!(matches!(too_deep, Err(Error::CapExceeded(_))));
    }
}
