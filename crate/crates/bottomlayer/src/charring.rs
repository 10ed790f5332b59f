//! Formal characters: weight multiplicity maps and their arithmetic.
//!
//! A [`WeightMap`] is a finite multiplicity function on the weight lattice of
//! a [`RootSystem`]. Irreducible characters are produced by Freudenthal's
//! recursion, products by convolution, and arbitrary (genuine) characters are
//! decomposed into irreducibles by repeatedly peeling the lexicographically
//! maximal weight, which for the representatives used here is always a
//! highest weight of some constituent.
//!
//! On canonical systems (type A and traceless Levi products) all map keys
//! are canonical representatives. Freudenthal's recursion internally uses
//! sum-aligned representatives: dominant weights `mu` below `lambda` are
//! enumerated with the same per-block coordinate sums as `lambda`, which
//! makes the representative of each class unique and keeps all pairings
//! against roots and `2*rho` shift-independent.

use std::collections::BTreeMap;

use crate::rootdata::{Family, RootSystem, Weight};
use crate::{add_mult, mul_mult, Error, Result};

/// A finite integer multiplicity function on weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    sys: RootSystem,
    entries: BTreeMap<Weight, i64>,
}

impl WeightMap {
    pub fn new(sys: RootSystem) -> WeightMap {
        WeightMap { sys, entries: BTreeMap::new() }
    }

    /// The unit character: the zero weight with multiplicity one.
    pub fn unit(sys: RootSystem) -> WeightMap {
        let mut m = WeightMap::new(sys);
        m.add(Weight::zero(m.sys.coords()), 1);
        m
    }

    pub fn sys(&self) -> &RootSystem {
        &self.sys
    }

    /// Adds `m` to the multiplicity of `w` (canonicalizing the key).
    pub fn add(&mut self, w: Weight, m: i64) {
        assert_eq!(w.len(), self.sys.coords(), "weight length mismatch");
        if m == 0 {
            return;
        }
        let key = self.sys.canonicalize(&w);
        let slot = self.entries.entry(key).or_insert(0);
        *slot = add_mult(*slot, m);
        if *slot == 0 {
            let key = self.sys.canonicalize(&w);
            self.entries.remove(&key);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.entries.get(&self.sys.canonicalize(w)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities (the dimension, for a genuine character).
    pub fn total_dim(&self) -> i128 {
        self.entries.values().map(|m| *m as i128).sum()
    }

    /// A character of a module is constant on Weyl orbits.
    pub fn is_weyl_invariant(&self) -> bool {
        self.entries
            .iter()
            .all(|(w, m)| self.get(&self.sys.dominant_rep(w)) == *m)
    }

    fn last_entry(&self) -> Option<(&Weight, i64)> {
        self.entries.iter().next_back().map(|(w, m)| (w, *m))
    }
}

/// Pointwise product of characters: convolution of weight maps.
pub fn convolve(a: &WeightMap, b: &WeightMap) -> WeightMap {
    assert_eq!(a.sys, b.sys, "convolve needs matching systems");
    let mut out = WeightMap::new(a.sys.clone());
    for (wa, ma) in a.iter() {
        for (wb, mb) in b.iter() {
            out.add(wa.add(wb), mul_mult(*ma, *mb));
        }
    }
    out
}

/// Scales every weight by `k` (the k-th Adams operation on characters).
pub fn adams(map: &WeightMap, k: i64) -> WeightMap {
    let mut out = WeightMap::new(map.sys.clone());
    for (w, m) in map.iter() {
        out.add(w.scaled(k), *m);
    }
    out
}

/// All dominant weights `mu <= lambda` in the root order, enumerated with the
/// same per-block sums as the given representative of `lambda` (so on
/// canonical systems each class appears exactly once, aligned with `lambda`).
pub fn dominant_aligned_below(sys: &RootSystem, lam: &Weight) -> Vec<Weight> {
    let mut per_block: Vec<Vec<Vec<i64>>> = Vec::new();
    for (off, len, t) in sys.block_spans() {
        per_block.push(block_dominant_candidates(&lam.0[off..off + len], t.family));
    }
    let mut out = Vec::new();
    let mut cur: Vec<i64> = Vec::with_capacity(lam.len());
    fn rec(parts: &[Vec<Vec<i64>>], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        match parts.split_first() {
            None => out.push(Weight(cur.clone())),
            Some((head, rest)) => {
                for choice in head {
                    let mark = cur.len();
                    cur.extend_from_slice(choice);
                    rec(rest, cur, out);
                    cur.truncate(mark);
                }
            }
        }
    }
    rec(&per_block, &mut cur, &mut out);
    out
}

/// Dominant block vectors `mu` with `lam - mu` in the block's positive cone;
/// for GL blocks the coordinate sum of `mu` equals that of `lam`.
fn block_dominant_candidates(lam: &[i64], family: Family) -> Vec<Vec<i64>> {
    let n = lam.len();
    let prefix: Vec<i64> = lam
        .iter()
        .scan(0i64, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect();
    let total = prefix[n - 1];
    let mut out = Vec::new();
    let mut cur: Vec<i64> = Vec::with_capacity(n);
    match family {
        Family::GL | Family::A => {
            fn dfs(
                k: usize,
                n: usize,
                prev: i64,
                pre_mu: i64,
                total: i64,
                prefix: &[i64],
                cur: &mut Vec<i64>,
                out: &mut Vec<Vec<i64>>,
            ) {
                if k == n {
                    if pre_mu == total {
                        out.push(cur.clone());
                    }
                    return;
                }
                let slots_left = (n - k) as i64;
                let upper = prev.min(prefix[k] - pre_mu);
                // Remaining entries are each at most the current value, so
                // the current value must cover its share of the sum.
                let lower = div_ceil_i64(total - pre_mu, slots_left);
                let mut v = upper;
                while v >= lower {
                    cur.push(v);
                    dfs(k + 1, n, v, pre_mu + v, total, prefix, cur, out);
                    cur.pop();
                    v -= 1;
                }
            }
            dfs(0, n, i64::MAX, 0, total, &prefix, &mut cur, &mut out);
        }
        Family::B | Family::C => {
            let parity = family == Family::C;
            fn dfs(
                k: usize,
                n: usize,
                prev: i64,
                pre_mu: i64,
                parity: bool,
                total: i64,
                prefix: &[i64],
                cur: &mut Vec<i64>,
                out: &mut Vec<Vec<i64>>,
            ) {
                if k == n {
                    out.push(cur.clone());
                    return;
                }
                let upper = prev.min(prefix[k] - pre_mu);
                let mut v = upper;
                while v >= 0 {
                    let ok = if parity && k == n - 1 {
                        (total - pre_mu - v) % 2 == 0
                    } else {
                        true
                    };
                    if ok {
                        cur.push(v);
                        dfs(k + 1, n, v, pre_mu + v, parity, total, prefix, cur, out);
                        cur.pop();
                    }
                    v -= 1;
                }
            }
            dfs(0, n, i64::MAX, 0, parity, total, &prefix, &mut cur, &mut out);
        }
        Family::D => {
            // First n-1 coordinates are nonnegative and nonincreasing with
            // prefix bounds; the last can be negative and carries the parity
            // and cone checks.
            fn dfs(
                k: usize,
                n: usize,
                prev: i64,
                pre_mu: i64,
                total: i64,
                prefix: &[i64],
                cur: &mut Vec<i64>,
                out: &mut Vec<Vec<i64>>,
            ) {
                if k == n - 1 {
                    let mut v = prev;
                    while v >= -prev {
                        let d_total = total - pre_mu - v;
                        if d_total % 2 == 0 {
                            let c_last = d_total / 2;
                            let c_prev = (prefix[n - 2] - pre_mu) - c_last;
                            if c_last >= 0 && c_prev >= 0 {
                                cur.push(v);
                                out.push(cur.clone());
                                cur.pop();
                            }
                        }
                        v -= 1;
                    }
                    return;
                }
                let upper = prev.min(prefix[k] - pre_mu);
                let mut v = upper;
                while v >= 0 {
                    cur.push(v);
                    dfs(k + 1, n, v, pre_mu + v, total, prefix, cur, out);
                    cur.pop();
                    v -= 1;
                }
            }
            dfs(0, n, i64::MAX, 0, total, &prefix, &mut cur, &mut out);
        }
    }
    out
}

fn div_ceil_i64(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    let q = a / b;
    if a % b > 0 {
        q + 1
    } else {
        q
    }
}

/// The full weight multiplicity map of the irreducible with highest weight
/// `lam`, by Freudenthal's recursion.
pub fn irrep_weights(sys: &RootSystem, lam: &Weight) -> Result<WeightMap> {
    sys.check_weight(lam)?;
    if !sys.is_dominant(lam) {
        return Err(Error::NonDominant(format!("{lam} is not dominant for {sys}")));
    }
    let mut doms = dominant_aligned_below(sys, lam);
    doms.sort();
    doms.reverse();
    debug_assert_eq!(doms.first(), Some(lam));
    let two_rho = sys.two_rho();
    let roots = sys.positive_roots();
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    mult.insert(lam.clone(), 1);
    for mu in doms.iter().skip(1) {
        let mut num: i128 = 0;
        for alpha in &roots {
            let mut nu = mu.add(alpha);
            loop {
                let key = sys.dominant_rep(&nu);
                let Some(&m) = mult.get(&key) else { break };
                num += 2 * (nu.dot(alpha) as i128) * (m as i128);
                nu = nu.add(alpha);
            }
        }
        let den = lam.sub(mu).dot(&lam.add(mu).add(&two_rho)) as i128;
        assert!(den > 0, "Freudenthal denominator must be positive");
        assert_eq!(num % den, 0, "Freudenthal division must be exact");
        let m = i64::try_from(num / den).expect("multiplicity overflow in i64 arithmetic");
        assert!(m > 0, "dominant weight below the highest weight has positive multiplicity");
        mult.insert(mu.clone(), m);
    }
    let mut out = WeightMap::new(sys.clone());
    for (mu, m) in mult {
        for v in sys.orbit(&mu) {
            out.add(v, m);
        }
    }
    Ok(out)
}

/// A nonnegative integer combination of irreducible highest weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    sys: RootSystem,
    constituents: BTreeMap<Weight, i64>,
}

impl Decomposition {
    pub fn sys(&self) -> &RootSystem {
        &self.sys
    }

    pub fn constituents(&self) -> &BTreeMap<Weight, i64> {
        &self.constituents
    }

    /// Multiplicity of the irreducible with highest weight `lam`.
    pub fn get(&self, lam: &Weight) -> i64 {
        self.constituents.get(&self.sys.canonicalize(lam)).copied().unwrap_or(0)
    }

    /// Number of irreducible constituents, counted with multiplicity.
    pub fn length(&self) -> i64 {
        self.constituents.values().fold(0, |acc, m| add_mult(acc, *m))
    }

    pub fn dim(&self) -> u128 {
        self.constituents
            .iter()
            .map(|(w, m)| self.sys.weyl_dim(w).expect("constituent is dominant") * (*m as u128))
            .sum()
    }

    pub fn to_weight_map(&self) -> WeightMap {
        let mut out = WeightMap::new(self.sys.clone());
        for (w, m) in &self.constituents {
            let irr = irrep_weights(&self.sys, w).expect("constituent is dominant");
            for (v, c) in irr.iter() {
                out.add(v.clone(), mul_mult(*c, *m));
            }
        }
        out
    }
}

/// Decomposes the character of a genuine finite-dimensional module into
/// irreducibles by peeling the lexicographically maximal surviving weight.
/// Lexicographic order refines the root order on the stored representatives,
/// so that weight is extremal and must be a dominant highest weight; negative
/// multiplicities or a nondominant extremal weight mean the map was not the
/// character of a module.
pub fn decompose(map: &WeightMap) -> Result<Decomposition> {
    #[cfg(debug_assertions)]
    {
        if !map.is_weyl_invariant() {
            return Err(Error::NotWeylInvariant(
                "weight map is not Weyl invariant".into(),
            ));
        }
    }
    let sys = map.sys.clone();
    let mut work = map.clone();
    let mut constituents = BTreeMap::new();
    let mut cache: BTreeMap<Weight, WeightMap> = BTreeMap::new();
    loop {
        let Some((top, m)) = work.last_entry().map(|(w, m)| (w.clone(), m)) else {
            break;
        };
        if m < 0 {
            return Err(Error::NotAModule(format!(
                "weight {top} has multiplicity {m}"
            )));
        }
        if !sys.is_dominant(&top) {
            return Err(Error::NotAModule(format!(
                "extremal weight {top} is not dominant"
            )));
        }
        let irr = match cache.get(&top) {
            Some(irr) => irr.clone(),
            None => {
                let irr = irrep_weights(&sys, &top)?;
                cache.insert(top.clone(), irr.clone());
                irr
            }
        };
        for (w, c) in irr.iter() {
            work.add(w.clone(), -mul_mult(*c, m));
        }
        constituents.insert(top, m);
    }
    Ok(Decomposition { sys, constituents })
}

/// Tensor product of two irreducibles, by convolution and peeling.
pub fn tensor(sys: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Decomposition> {
    let a = irrep_weights(sys, lam)?;
    let b = irrep_weights(sys, mu)?;
    decompose(&convolve(&a, &b))
}

/// Tensor product by the alternating-sign chamber sort: for each weight `nu`
/// of the second factor, `lam + nu` is pushed through the dotted Weyl action
/// and lands with a sign. Used as an independent cross-check of [`tensor`].
pub fn tensor_klimyk(sys: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Decomposition> {
    sys.check_weight(lam)?;
    if !sys.is_dominant(lam) {
        return Err(Error::NonDominant(format!("{lam} is not dominant for {sys}")));
    }
    let b = irrep_weights(sys, mu)?;
    let two_rho = sys.two_rho();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in b.iter() {
        let xi = lam.add(nu);
        let doubled = xi.scaled(2).add(&two_rho);
        let Some((w, dom)) = sys.sort_to_chamber(&doubled) else { continue };
        let shifted = dom.sub(&two_rho);
        debug_assert!(shifted.0.iter().all(|v| v % 2 == 0));
        let target = sys.canonicalize(&Weight(shifted.0.iter().map(|v| v / 2).collect()));
        let sign = if sys.length(&w) % 2 == 0 { 1 } else { -1 };
        let slot = acc.entry(target).or_insert(0);
        *slot = add_mult(*slot, mul_mult(sign, *m));
    }
    acc.retain(|_, m| *m != 0);
    for (w, m) in &acc {
        if *m < 0 || !sys.is_dominant(w) {
            return Err(Error::NotAModule(format!(
                "alternating sum left {w} with multiplicity {m}"
            )));
        }
    }
    Ok(Decomposition { sys: sys.clone(), constituents: acc })
}

/// Highest weight of the dual of the irreducible with highest weight `lam`.
pub fn dual_weight(sys: &RootSystem, lam: &Weight) -> Weight {
    let w0 = sys.longest_element();
    sys.canonicalize(&w0.act(lam).neg())
}

/// The character of the dual module: every weight negated.
pub fn dualize_map(map: &WeightMap) -> WeightMap {
    let mut out = WeightMap::new(map.sys.clone());
    for (w, m) in map.iter() {
        out.add(w.neg(), *m);
    }
    out
}

/// Divides every multiplicity by `k`, which must be exact.
fn divide_exact(map: &WeightMap, k: i64) -> WeightMap {
    let mut out = WeightMap::new(map.sys.clone());
    for (w, m) in map.iter() {
        assert_eq!(m % k, 0, "Newton recursion division must be exact");
        out.add(w.clone(), m / k);
    }
    out
}

/// Characters of the symmetric powers `S^0, ..., S^t` of `map`, by the
/// Newton identity `t * h_t = sum_{i=1..t} p_i * h_{t-i}`.
pub fn sym_powers(map: &WeightMap, t: usize) -> Vec<WeightMap> {
    let mut powers = vec![WeightMap::unit(map.sys.clone())];
    let adams_maps: Vec<WeightMap> = (1..=t as i64).map(|i| adams(map, i)).collect();
    for k in 1..=t {
        let mut acc = WeightMap::new(map.sys.clone());
        for i in 1..=k {
            let term = convolve(&adams_maps[i - 1], &powers[k - i]);
            for (w, m) in term.iter() {
                acc.add(w.clone(), *m);
            }
        }
        powers.push(divide_exact(&acc, k as i64));
    }
    powers
}

/// Characters of the exterior powers, by the signed Newton identity
/// `t * e_t = sum_{i=1..t} (-1)^(i-1) p_i * e_{t-i}`.
pub fn ext_powers(map: &WeightMap, t: usize) -> Vec<WeightMap> {
    let mut powers = vec![WeightMap::unit(map.sys.clone())];
    let adams_maps: Vec<WeightMap> = (1..=t as i64).map(|i| adams(map, i)).collect();
    for k in 1..=t {
        let mut acc = WeightMap::new(map.sys.clone());
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let term = convolve(&adams_maps[i - 1], &powers[k - i]);
            for (w, m) in term.iter() {
                acc.add(w.clone(), mul_mult(sign, *m));
            }
        }
        powers.push(divide_exact(&acc, k as i64));
    }
    powers
}

/// Character of the full exterior algebra on the given one-dimensional
/// weight spaces: the product of `(1 + e^w)` over the list.
pub fn exterior_algebra(sys: &RootSystem, weights: &[Weight]) -> WeightMap {
    let mut acc = WeightMap::unit(sys.clone());
    for w in weights {
        let mut factor = WeightMap::unit(sys.clone());
        factor.add(w.clone(), 1);
        acc = convolve(&acc, &factor);
    }
    acc
}

/// An exact linear map between weight lattices, given by integer rows
/// (one per target coordinate). Used for restriction along an embedding of
/// Cartan subalgebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusMap {
    source: RootSystem,
    target: RootSystem,
    rows: Vec<Vec<i64>>,
}

impl TorusMap {
    pub fn new(source: RootSystem, target: RootSystem, rows: Vec<Vec<i64>>) -> Result<TorusMap> {
        if rows.len() != target.coords() {
            return Err(Error::DimensionMismatch(format!(
                "torus map has {} rows, target {target} needs {}",
                rows.len(),
                target.coords()
            )));
        }
        for row in &rows {
            if row.len() != source.coords() {
                return Err(Error::DimensionMismatch(format!(
                    "torus map row has {} columns, source {source} needs {}",
                    row.len(),
                    source.coords()
                )));
            }
        }
        if source.is_canonical() {
            // The map must be well defined on classes modulo the global
            // constant vector.
            let ones = Weight(vec![1; source.coords()]);
            let image = apply_rows(&rows, &ones);
            let ok = if target.is_canonical() {
                image.0.windows(2).all(|p| p[0] == p[1])
            } else {
                image.0.iter().all(|v| *v == 0)
            };
            if !ok {
                return Err(Error::TypeMismatch(
                    "torus map does not descend to canonical weight classes".into(),
                ));
            }
        }
        Ok(TorusMap { source, target, rows })
    }

    pub fn source(&self) -> &RootSystem {
        &self.source
    }

    pub fn target(&self) -> &RootSystem {
        &self.target
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        self.target.canonicalize(&apply_rows(&self.rows, w))
    }
}

fn apply_rows(rows: &[Vec<i64>], w: &Weight) -> Weight {
    Weight(
        rows.iter()
            .map(|row| {
                let acc: i128 = row
                    .iter()
                    .zip(&w.0)
                    .map(|(a, b)| (*a as i128) * (*b as i128))
                    .sum();
                i64::try_from(acc).expect("torus map overflow")
            })
            .collect(),
    )
}

/// Restricts a character along a torus map and decomposes the result over
/// the target system. The pushed-forward map is always checked for Weyl
/// invariance: a map that fails it was not the character of a module for the
/// target algebra, typically because the embedding was not compatible.
pub fn restrict(map: &WeightMap, tm: &TorusMap) -> Result<Decomposition> {
    if map.sys != tm.source {
        return Err(Error::TypeMismatch(format!(
            "character lives on {}, torus map expects {}",
            map.sys, tm.source
        )));
    }
    let mut out = WeightMap::new(tm.target.clone());
    for (w, m) in map.iter() {
        out.add(tm.apply(w), *m);
    }
    if !out.is_weyl_invariant() {
        return Err(Error::NotWeylInvariant(
            "restricted character is not Weyl invariant for the target".into(),
        ));
    }
    decompose(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::rootdata::LieType;

    fn sys(name: &str) -> RootSystem {
        RootSystem::simple(name.parse::<LieType>().unwrap())
    }

    fn wt(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn natural_rep_weights() {
        let gl2 = RootSystem::gl(2);
        let v = irrep_weights(&gl2, &wt("[1,0]")).unwrap();
        assert_eq!(v.get(&wt("[1,0]")), 1);
        assert_eq!(v.get(&wt("[0,1]")), 1);
        assert_eq!(v.total_dim(), 2);
        // sl(2): canonical keys.
        let a1 = RootSystem::sl(2);
        let v = irrep_weights(&a1, &wt("[1,0]")).unwrap();
        assert_eq!(v.get(&wt("[1,0]")), 1);
        assert_eq!(v.get(&wt("[0,1]")), 1);
        assert_eq!(v.get(&wt("[-1,0]")), 1);
        assert_eq!(v.total_dim(), 2);
    }

    #[test]
    fn adjoint_zero_weight_multiplicities() {
        // gl(3) adjoint-like V(2,1,0): dimension 8, weight (1,1,1) twice.
        let gl3 = RootSystem::gl(3);
        let ad = irrep_weights(&gl3, &wt("[2,1,0]")).unwrap();
        assert_eq!(ad.total_dim(), 8);
        assert_eq!(ad.get(&wt("[1,1,1]")), 2);
        assert_eq!(ad.get(&wt("[2,1,0]")), 1);
        assert_eq!(ad.get(&wt("[0,1,2]")), 1);
        // so(5) adjoint V(1,1): dimension 10, zero weight twice.
        let b2 = sys("B2");
        let ad = irrep_weights(&b2, &wt("[1,1]")).unwrap();
        assert_eq!(ad.total_dim(), 10);
        assert_eq!(ad.get(&wt("[0,0]")), 2);
        // sp(4) V(1,1): dimension 5, zero weight once.
        let c2 = sys("C2");
        let v = irrep_weights(&c2, &wt("[1,1]")).unwrap();
        assert_eq!(v.total_dim(), 5);
        assert_eq!(v.get(&wt("[0,0]")), 1);
    }

    #[test]
    fn freudenthal_matches_weyl_dim() {
        let mut rng = SplitMix64::new(3);
        for name in ["A2", "B2", "C2", "D3", "GL3", "B3"] {
            let s = sys(name);
            let n = s.coords();
            let mut tried = 0;
            while tried < 12 {
                let w = Weight((0..n).map(|_| rng.range_i64(0, 3)).collect());
                let w = s.dominant_rep(&w);
                if !s.is_dominant(&w) {
                    continue;
                }
                tried += 1;
                let map = irrep_weights(&s, &w).unwrap();
                assert_eq!(map.total_dim() as u128, s.weyl_dim(&w).unwrap(), "{name} {w}");
                assert!(map.is_weyl_invariant(), "{name} {w}");
            }
        }
    }

    #[test]
    fn decompose_recovers_irreducibles() {
        let b2 = sys("B2");
        let map = irrep_weights(&b2, &wt("[2,1]")).unwrap();
        let dec = decompose(&map).unwrap();
        assert_eq!(dec.constituents().len(), 1);
        assert_eq!(dec.get(&wt("[2,1]")), 1);
        assert_eq!(dec.length(), 1);
        assert_eq!(dec.dim(), b2.weyl_dim(&wt("[2,1]")).unwrap());
    }

    #[test]
    fn tensor_square_of_natural_reps() {
        // gl(2): V (x) V = S^2 + Lambda^2.
        let gl2 = RootSystem::gl(2);
        let dec = tensor(&gl2, &wt("[1,0]"), &wt("[1,0]")).unwrap();
        assert_eq!(dec.get(&wt("[2,0]")), 1);
        assert_eq!(dec.get(&wt("[1,1]")), 1);
        assert_eq!(dec.length(), 2);
        // sl(2): the Lambda^2 factor is trivial in canonical coordinates.
        let a1 = RootSystem::sl(2);
        let dec = tensor(&a1, &wt("[1,0]"), &wt("[1,0]")).unwrap();
        assert_eq!(dec.get(&wt("[2,0]")), 1);
        assert_eq!(dec.get(&wt("[0,0]")), 1);
        // so(5): V (x) V = V(2,0) + V(1,1) + trivial.
        let b2 = sys("B2");
        let dec = tensor(&b2, &wt("[1,0]"), &wt("[1,0]")).unwrap();
        assert_eq!(dec.get(&wt("[2,0]")), 1);
        assert_eq!(dec.get(&wt("[1,1]")), 1);
        assert_eq!(dec.get(&wt("[0,0]")), 1);
        assert_eq!(dec.dim(), 25);
    }

    #[test]
    fn tensor_agrees_with_alternating_sort() {
        let mut rng = SplitMix64::new(17);
        for name in ["A2", "B2", "C2", "D3", "GL3"] {
            let s = sys(name);
            let n = s.coords();
            let mut tried = 0;
            while tried < 8 {
                let a = s.dominant_rep(&Weight((0..n).map(|_| rng.range_i64(0, 2)).collect()));
                let b = s.dominant_rep(&Weight((0..n).map(|_| rng.range_i64(0, 2)).collect()));
                if !s.is_dominant(&a) || !s.is_dominant(&b) {
                    continue;
                }
                tried += 1;
                let lhs = tensor(&s, &a, &b).unwrap();
                let rhs = tensor_klimyk(&s, &a, &b).unwrap();
                assert_eq!(lhs.constituents(), rhs.constituents(), "{name} {a} {b}");
                let dims = (s.weyl_dim(&a).unwrap()) * (s.weyl_dim(&b).unwrap());
                assert_eq!(lhs.dim(), dims, "{name} {a} {b}");
            }
        }
    }

    #[test]
    fn duals_and_involution() {
        let gl3 = RootSystem::gl(3);
        assert_eq!(dual_weight(&gl3, &wt("[1,0,0]")), wt("[0,0,-1]"));
        assert_eq!(dual_weight(&gl3, &dual_weight(&gl3, &wt("[2,1,0]"))), wt("[2,1,0]"));
        // Self-dual families.
        let b2 = sys("B2");
        assert_eq!(dual_weight(&b2, &wt("[2,1]")), wt("[2,1]"));
        let c3 = sys("C3");
        assert_eq!(dual_weight(&c3, &wt("[3,1,1]")), wt("[3,1,1]"));
        // sl(3): the dual of the natural rep in canonical coordinates.
        let a2 = RootSystem::sl(3);
        assert_eq!(dual_weight(&a2, &wt("[1,0,0]")), wt("[1,1,0]"));
        // Dual character is the negated weight map.
        let v = irrep_weights(&gl3, &wt("[2,1,0]")).unwrap();
        let dual = dualize_map(&v);
        let dec = decompose(&dual).unwrap();
        assert_eq!(dec.get(&wt("[0,-1,-2]")), 1);
        assert_eq!(dec.length(), 1);
    }

    #[test]
    fn sym_and_ext_powers_of_natural_rep() {
        let gl3 = RootSystem::gl(3);
        let v = irrep_weights(&gl3, &wt("[1,0,0]")).unwrap();
        let syms = sym_powers(&v, 3);
        let exts = ext_powers(&v, 3);
        // S^k V is irreducible with highest weight (k,0,0).
        for k in 1..=3usize {
            let dec = decompose(&syms[k]).unwrap();
            assert_eq!(dec.length(), 1);
            assert_eq!(dec.get(&Weight(vec![k as i64, 0, 0])), 1);
        }
        // Lambda^k V is irreducible with highest weight (1,...,1,0,...).
        let dec = decompose(&exts[2]).unwrap();
        assert_eq!(dec.get(&wt("[1,1,0]")), 1);
        let dec = decompose(&exts[3]).unwrap();
        assert_eq!(dec.get(&wt("[1,1,1]")), 1);
        // Dimensions: C(n+k-1, k) and C(n, k).
        assert_eq!(syms[2].total_dim(), 6);
        assert_eq!(syms[3].total_dim(), 10);
        assert_eq!(exts[2].total_dim(), 3);
        assert_eq!(exts[3].total_dim(), 1);
    }

    #[test]
    fn newton_identity_consistency() {
        // sum_t (-1)^t e_t h_{k-t} = 0 for k >= 1, for a non-irreducible map.
        let b2 = sys("B2");
        let v = irrep_weights(&b2, &wt("[1,0]")).unwrap();
        let h = sym_powers(&v, 4);
        let e = ext_powers(&v, 4);
        for k in 1..=4usize {
            let mut acc = WeightMap::new(b2.clone());
            for t in 0..=k {
                let sign = if t % 2 == 0 { 1 } else { -1 };
                let term = convolve(&e[t], &h[k - t]);
                for (w, m) in term.iter() {
                    acc.add(w.clone(), sign * m);
                }
            }
            assert!(acc.is_empty(), "k = {k}");
        }
    }

    #[test]
    fn exterior_algebra_of_weight_list() {
        let gl2 = RootSystem::gl(2);
        let alg = exterior_algebra(&gl2, &[wt("[1,-1]"), wt("[1,-1]")]);
        assert_eq!(alg.total_dim(), 4);
        assert_eq!(alg.get(&wt("[2,-2]")), 1);
        assert_eq!(alg.get(&wt("[1,-1]")), 2);
        assert_eq!(alg.get(&wt("[0,0]")), 1);
    }

    #[test]
    fn restrict_to_product_of_gl_blocks() {
        // gl(3) natural rep restricted to gl(2) + gl(1) on the diagonal.
        let gl3 = RootSystem::gl(3);
        let levi = RootSystem::product(
            vec!["GL2".parse().unwrap(), "GL1".parse().unwrap()],
            false,
        )
        .unwrap();
        let tm = TorusMap::new(
            gl3.clone(),
            levi.clone(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        let v = irrep_weights(&gl3, &wt("[1,0,0]")).unwrap();
        let dec = restrict(&v, &tm).unwrap();
        assert_eq!(dec.get(&wt("[1,0,0]")), 1);
        assert_eq!(dec.get(&wt("[0,0,1]")), 1);
        assert_eq!(dec.length(), 2);
        // gl(3) adjoint-like rep: restriction dimensions must add up.
        let ad = irrep_weights(&gl3, &wt("[2,1,0]")).unwrap();
        let dec = restrict(&ad, &tm).unwrap();
        assert_eq!(dec.dim(), 8);
    }

    #[test]
    fn restrict_rejects_incompatible_maps() {
        // A shear of the so(5) torus is not induced by any algebra embedding:
        // the pushed-forward character of the vector rep is visibly not
        // invariant under the target Weyl group.
        let b2 = sys("B2");
        let tm = TorusMap::new(b2.clone(), b2.clone(), vec![vec![1, 0], vec![1, 1]]).unwrap();
        let v = irrep_weights(&b2, &wt("[1,0]")).unwrap();
        assert!(matches!(restrict(&v, &tm), Err(Error::NotWeylInvariant(_))));
    }

    #[test]
    fn canonical_torus_map_validation() {
        let a1 = RootSystem::sl(2);
        let gl1 = RootSystem::gl(1);
        // (1, 0) does not kill the constant vector: rejected.
        assert!(TorusMap::new(a1.clone(), gl1.clone(), vec![vec![1, 0]]).is_err());
        // (1, -1) does: accepted.
        let tm = TorusMap::new(a1.clone(), gl1.clone(), vec![vec![1, -1]]).unwrap();
        let v = irrep_weights(&a1, &wt("[2,0]")).unwrap();
        let dec = restrict(&v, &tm).unwrap();
        assert_eq!(dec.length(), 3);
        assert_eq!(dec.get(&wt("[2]")), 1);
        assert_eq!(dec.get(&wt("[0]")), 1);
        assert_eq!(dec.get(&wt("[-2]")), 1);
    }

    #[test]
    fn dominant_aligned_enumeration_is_exact() {
        // Brute-force oracle: enumerate integer vectors in a box, keep the
        // dominant ones below lambda, align, dedupe.
        for (name, lam) in [("GL3", "[2,1,0]"), ("B2", "[2,1]"), ("C2", "[2,1]"), ("D3", "[1,1,1]")]
        {
            let s = sys(name);
            let lam = wt(lam);
            let n = s.coords();
            let mut expect = std::collections::BTreeSet::new();
            let mut v = vec![-4i64; n];
            loop {
                let w = Weight(v.clone());
                if s.is_dominant(&w) && s.le_root_order(&w, &lam) {
                    expect.insert(w.clone());
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    v[i] += 1;
                    if v[i] <= 4 {
                        break;
                    }
                    v[i] = -4;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            let got: std::collections::BTreeSet<Weight> =
                dominant_aligned_below(&s, &lam).into_iter().collect();
            assert_eq!(got, expect, "{name}");
        }
    }
}
