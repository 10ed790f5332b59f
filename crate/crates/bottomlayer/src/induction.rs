//! Weight combinatorics of parabolically induced modules: the twist
//! character of a parabolic, dotted Weyl reflections into the dominant
//! chamber, dominance tests for lowest constituents, bottom-layer membership,
//! and the growth classification of a block split.
//!
//! Everything here works on the real part of a torus element `h`. The
//! reductive part of the parabolic is read off from the level sets of `h`,
//! and the reversal elements of the ambient and Levi Weyl groups drive the
//! dotted-action formulas.

use num_traits::{Signed, Zero};

use crate::charring::{decompose, exterior_algebra};
use crate::linalg::Q;
use crate::parabolic::TorusElement;
use crate::rootdata::{Family, LieType, RootSystem, SignedPermutation, Weight};
use crate::{Caps, Error, Result};

/// Indices of `h` in stably sorted descending order.
pub fn tau_order(h: &[Q]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.len()).collect();
    order.sort_by(|&a, &b| h[b].cmp(&h[a]).then(a.cmp(&b)));
    order
}

/// The staircase vector written along the descending order of `h`:
/// coordinate `tau(i)` receives `n - 1 - i`.
pub fn rho_tau(h: &[Q]) -> Weight {
    let n = h.len();
    let mut v = vec![0i64; n];
    for (i, &pos) in tau_order(h).iter().enumerate() {
        v[pos] = (n - 1 - i) as i64;
    }
    Weight(v)
}

/// Reversal of all coordinates along the descending order of `h`.
fn reversal_full(h: &[Q]) -> SignedPermutation {
    let order = tau_order(h);
    let n = h.len();
    let mut w = SignedPermutation::identity(n);
    for i in 0..n {
        w.perm[order[i]] = order[n - 1 - i];
    }
    w
}

/// Reversal within each level set of `h`, taken along the descending order.
fn reversal_by_level(h: &[Q]) -> SignedPermutation {
    let order = tau_order(h);
    let n = h.len();
    let mut w = SignedPermutation::identity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && h[order[end]] == h[order[start]] {
            end += 1;
        }
        for k in 0..end - start {
            w.perm[order[start + k]] = order[end - 1 - k];
        }
        start = end;
    }
    w
}

/// The character by which a parabolic of gl(n) twists: the negative of the
/// root sum of its nilradical, computed through the staircase vector of `h`.
pub fn vz_lambda(h: &TorusElement) -> Result<Weight> {
    let n = h.len();
    if n == 0 {
        return Err(Error::InvalidArgument("h must be nonempty".into()));
    }
    let rt = rho_tau(&h.re);
    let w_g = reversal_full(&h.re);
    let w_m = reversal_by_level(&h.re);
    let lambda = w_m.inverse().act(&w_g.act(&rt)).sub(&rt);
    #[cfg(debug_assertions)]
    {
        // The twist equals the negative sum of the roots positive on h, and
        // in particular is constant on each level set of h.
        let mut neg_sum = vec![0i64; n];
        for i in 0..n {
            for j in 0..n {
                if h.re[i] > h.re[j] {
                    neg_sum[i] -= 1;
                    neg_sum[j] += 1;
                }
            }
        }
        debug_assert_eq!(lambda.0, neg_sum, "twist differs from the nilradical root sum");
    }
    Ok(lambda)
}

/// Checks that `h` is dominant for the standard order, blockwise: entries
/// nonincreasing, and nonnegative in the orthogonal and symplectic families.
fn check_standard_dominant(k0: &RootSystem, h: &TorusElement) -> Result<()> {
    for (off, len, t) in k0.block_spans() {
        let slice = &h.re[off..off + len];
        let sorted = slice.windows(2).all(|w| w[0] >= w[1]);
        let signs_ok = match t.family {
            Family::GL | Family::A => true,
            Family::B | Family::C | Family::D => slice.iter().all(|q| !q.is_negative()),
        };
        if !sorted || !signs_ok {
            return Err(Error::BorelIncompatible(format!(
                "h = {h} is not dominant for the standard order of {k0}"
            )));
        }
    }
    Ok(())
}

/// Levi subsystem of `k0` cut out by `h`, laid out on the same coordinates.
/// Requires `h` standard-dominant so the level sets are contiguous.
fn levi_on_coords(k0: &RootSystem, h: &TorusElement) -> Result<RootSystem> {
    check_standard_dominant(k0, h)?;
    let mut blocks: Vec<LieType> = Vec::new();
    for (off, len, t) in k0.block_spans() {
        let slice = &h.re[off..off + len];
        let mut start = 0;
        while start < len {
            let mut end = start + 1;
            while end < len && slice[end] == slice[start] {
                end += 1;
            }
            let run = end - start;
            let gl_like = matches!(t.family, Family::GL | Family::A);
            let block = if gl_like || !slice[start].is_zero() {
                LieType::new(Family::GL, run)?
            } else if t.family == Family::D && run == 1 {
                LieType::new(Family::GL, 1)?
            } else {
                LieType::new(t.family, run)?
            };
            blocks.push(block);
            start = end;
        }
    }
    RootSystem::product(blocks, k0.is_canonical())
}

/// The dual twist of a weight across the parabolic of `k0` cut out by `h`:
/// the dotted action of (longest element of `k0`) * (longest element of the
/// Levi)^{-1}. Fails with `BorelIncompatible` unless `h` is dominant for the
/// standard order.
pub fn nu_check(k0: &RootSystem, h: &TorusElement, nu: &Weight) -> Result<Weight> {
    if h.len() != k0.coords() {
        return Err(Error::DimensionMismatch(format!(
            "torus element has {} entries, system needs {}",
            h.len(),
            k0.coords()
        )));
    }
    k0.check_weight(nu)?;
    let levi = levi_on_coords(k0, h)?;
    let w_m = levi.longest_element();
    let w_k = k0.longest_element();
    let e = w_k.compose(&w_m.inverse());
    Ok(k0.canonicalize(&k0.dot_act(&e, nu)))
}

/// Sheaf cohomology shape of a line-bundle weight: either everything
/// vanishes (the shifted weight is singular) or exactly one degree survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BbwCohomology {
    Zero,
    Class { degree: usize, weight: Weight },
}

/// Pushes a weight to the dominant chamber by the dotted action; the degree
/// is the length of the sorting element.
pub fn bbw_cohomology(sys: &RootSystem, nu: &Weight) -> Result<BbwCohomology> {
    sys.check_weight(nu)?;
    let shifted = nu.scaled(2).add(&sys.two_rho());
    let Some((w, _)) = sys.sort_to_chamber(&shifted) else {
        return Ok(BbwCohomology::Zero);
    };
    let weight = sys.canonicalize(&sys.dot_act(&w, nu));
    debug_assert!(sys.is_dominant(&weight));
    Ok(BbwCohomology::Class { degree: sys.length(&w), weight })
}

/// Tests whether the full dual twist of `mu` over gl(n) is dominant, both
/// directly and by the equivalent gap condition `mu[i+1] - mu[i] >= 2`.
pub fn mu_dominance(n: usize, mu: &Weight) -> Result<(bool, bool)> {
    let sys = RootSystem::gl(n);
    sys.check_weight(mu)?;
    let direct = sys.is_dominant(&sys.dot_act(&sys.longest_element(), mu));
    let combinatorial = mu.0.windows(2).all(|w| w[1] - w[0] >= 2);
    Ok((direct, combinatorial))
}

/// Bottom-layer data of the block parabolic of gl(p+q) cut out by `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomLayerData {
    /// Twist character of the parabolic, as a gl(p+q) weight.
    pub lambda_p: Weight,
    /// Its dual twist across the block subalgebra gl(p) x gl(q).
    pub lambda_p_vee: Weight,
    /// Whether the dual twist is dominant for the block subalgebra.
    pub dominant: bool,
    /// Multiplicity of the dual twist in the exterior algebra of the
    /// cross-block weights; zero when not dominant.
    pub multiplicity: i64,
}

/// Computes the bottom-layer membership data: the parabolic twist, its dual
/// twist over s(gl(p) + gl(q)), and the multiplicity of that weight in the
/// exterior algebra on the cross-block weights.
pub fn vz_bottom(p: usize, q: usize, h: &TorusElement, caps: &Caps) -> Result<BottomLayerData> {
    if p == 0 || q == 0 {
        return Err(Error::NotSymmetricSetup(
            "both blocks of the pair must be nonempty".into(),
        ));
    }
    let n = p + q;
    if h.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "torus element has {} entries, the pair needs {n}",
            h.len()
        )));
    }
    if p * q > caps.factor_dim {
        return Err(Error::CapExceeded(format!(
            "p*q = {} exceeds the factor cap {}; the exterior algebra grows exponentially",
            p * q,
            caps.factor_dim
        )));
    }
    let k0 = RootSystem::product(
        vec![LieType::new(Family::GL, p)?, LieType::new(Family::GL, q)?],
        true,
    )?;
    let lambda_p = vz_lambda(h)?;
    let lambda_p_vee = nu_check(&k0, h, &lambda_p)?;
    let mut cross = Vec::with_capacity(2 * p * q);
    for i in 0..p {
        for j in p..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[j] = -1;
            cross.push(Weight(v.clone()));
            v[i] = -1;
            v[j] = 1;
            cross.push(Weight(v));
        }
    }
    let ext = exterior_algebra(&k0, &cross);
    let dominant = k0.is_dominant(&lambda_p_vee);
    let multiplicity = if dominant { decompose(&ext)?.get(&lambda_p_vee) } else { 0 };
    Ok(BottomLayerData { lambda_p, lambda_p_vee, dominant, multiplicity })
}

/// Which cone of a simple module's support shows up for the block split of
/// gl(p+q) at `h`: counted by the cross pairs on which `h` decreases or
/// increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FkSupport {
    /// Only decreasing cross pairs: the blocks plus the upper cross module.
    KPlusR,
    /// Only increasing cross pairs: the blocks plus the lower cross module.
    KPlusRbar,
    /// Cross pairs in both directions: the blocks alone.
    KOnly,
}

impl FkSupport {
    pub fn as_str(&self) -> &'static str {
        match self {
            FkSupport::KPlusR => "k+r",
            FkSupport::KPlusRbar => "k+rbar",
            FkSupport::KOnly => "k",
        }
    }
}

impl std::fmt::Display for FkSupport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FernandoKacData {
    /// Cross pairs (i <= p < j) with `h` strictly increasing, i.e. the lower
    /// triangle meets the split.
    pub a: usize,
    /// Cross pairs (i <= p < j) with `h` strictly decreasing.
    pub b: usize,
    pub support: FkSupport,
}

/// Classifies the growth directions of the block split of gl(p+q) at `h` by
/// counting strict inequalities across the blocks. Fails with `NotProper`
/// when `h` is constant across every cross pair.
pub fn fernando_kac(p: usize, q: usize, h: &TorusElement) -> Result<FernandoKacData> {
    if p == 0 || q == 0 {
        return Err(Error::NotSymmetricSetup(
            "both blocks of the pair must be nonempty".into(),
        ));
    }
    let n = p + q;
    if h.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "torus element has {} entries, the pair needs {n}",
            h.len()
        )));
    }
    let mut a = 0usize;
    let mut b = 0usize;
    for i in 0..p {
        for j in p..n {
            if h.re[i] > h.re[j] {
                b += 1;
            } else if h.re[i] < h.re[j] {
                a += 1;
            }
        }
    }
    let support = match (a, b) {
        (0, 0) => {
            return Err(Error::NotProper(format!(
                "h = {h} is constant across the block split"
            )))
        }
        (0, _) => FkSupport::KPlusR,
        (_, 0) => FkSupport::KPlusRbar,
        _ => FkSupport::KOnly,
    };
    Ok(FernandoKacData { a, b, support })
}

/// Diagonal shift of a base bidegree: the pairs (a+j, b+j) for 0 <= j <= jmax.
/// These are the only bidegrees a module classified at (a, b) can occupy.
pub fn bidegree_profile(a: usize, b: usize, jmax: usize) -> Vec<(usize, usize)> {
    (0..=jmax).map(|j| (a + j, b + j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn h(s: &str) -> TorusElement {
        s.parse().unwrap()
    }

    fn wt(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn staircase_and_twist() {
        assert_eq!(tau_order(&h("1,-1,0").re), vec![0, 2, 1]);
        assert_eq!(rho_tau(&h("1,-1,0").re), wt("[2,0,1]"));
        assert_eq!(vz_lambda(&h("1,-1,0")).unwrap(), wt("[-2,2,0]"));
        // A Borel of gl(2) twists by the negative simple root.
        assert_eq!(vz_lambda(&h("1,0")).unwrap(), wt("[-1,1]"));
        // Level sets of size two: the twist is constant on them.
        assert_eq!(vz_lambda(&h("1,1,0")).unwrap(), wt("[-1,-1,2]"));
        assert_eq!(vz_lambda(&h("0,0,0")).unwrap(), wt("[0,0,0]"));
    }

    #[test]
    fn twist_matches_root_sum_on_random_elements() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let n = 1 + rng.below(6) as usize;
            let re: Vec<i64> = (0..n).map(|_| rng.range_i64(-3, 3)).collect();
            let e = TorusElement::from_integers(&re);
            let lambda = vz_lambda(&e).unwrap();
            let mut neg_sum = vec![0i64; n];
            for i in 0..n {
                for j in 0..n {
                    if re[i] > re[j] {
                        neg_sum[i] -= 1;
                        neg_sum[j] += 1;
                    }
                }
            }
            assert_eq!(lambda.0, neg_sum);
        }
    }

    #[test]
    fn dual_twist_formulas() {
        let gl2 = RootSystem::gl(2);
        // Regular h: the full reversal acts, (m1, m2) -> (m2 - 1, m1 + 1).
        for (m1, m2) in [(0i64, 0i64), (3, 5), (5, 3), (-2, 7)] {
            let nu = Weight(vec![m1, m2]);
            let vee = nu_check(&gl2, &h("1,0"), &nu).unwrap();
            assert_eq!(vee, Weight(vec![m2 - 1, m1 + 1]));
        }
        // Constant h: the Levi is everything and the twist is trivial.
        assert_eq!(nu_check(&gl2, &h("2,2"), &wt("[4,1]")).unwrap(), wt("[4,1]"));
        assert!(matches!(
            nu_check(&gl2, &h("0,1"), &wt("[0,0]")),
            Err(Error::BorelIncompatible(_))
        ));
        // Orthogonal ambient: sign flips enter the reversal elements.
        let b2 = RootSystem::simple("B2".parse().unwrap());
        assert_eq!(nu_check(&b2, &h("2,1"), &wt("[1,0]")).unwrap(), wt("[-4,-1]"));
        assert_eq!(nu_check(&b2, &h("1,0"), &wt("[1,0]")).unwrap(), wt("[-4,0]"));
        assert!(nu_check(&b2, &h("1"), &wt("[1,0]")).is_err());
    }

    #[test]
    fn chamber_cohomology_cases() {
        let sl2 = RootSystem::sl(2);
        assert_eq!(
            bbw_cohomology(&sl2, &wt("[2,0]")).unwrap(),
            BbwCohomology::Class { degree: 0, weight: wt("[2,0]") }
        );
        assert_eq!(
            bbw_cohomology(&sl2, &wt("[-4,0]")).unwrap(),
            BbwCohomology::Class { degree: 1, weight: wt("[2,0]") }
        );
        assert_eq!(bbw_cohomology(&sl2, &wt("[-1,0]")).unwrap(), BbwCohomology::Zero);
        // Dominant weights always sit in degree zero.
        let c2 = RootSystem::simple("C2".parse().unwrap());
        assert_eq!(
            bbw_cohomology(&c2, &wt("[3,1]")).unwrap(),
            BbwCohomology::Class { degree: 0, weight: wt("[3,1]") }
        );
        // The longest element sends the most negative chamber to degree
        // = number of positive roots.
        let moved = bbw_cohomology(&c2, &wt("[-10,-3]")).unwrap();
        let BbwCohomology::Class { degree, weight } = moved else {
            panic!("expected a class")
        };
        assert_eq!(degree, 4);
        assert!(c2.is_dominant(&weight));
    }

    #[test]
    fn gap_dominance_agreement() {
        assert_eq!(mu_dominance(2, &wt("[3,5]")).unwrap(), (true, true));
        assert_eq!(mu_dominance(2, &wt("[5,3]")).unwrap(), (false, false));
        assert_eq!(mu_dominance(2, &wt("[0,1]")).unwrap(), (false, false));
        assert_eq!(mu_dominance(3, &wt("[0,2,4]")).unwrap(), (true, true));
        let mut rng = SplitMix64::new(5);
        for _ in 0..300 {
            let n = 1 + rng.below(5) as usize;
            let mu = Weight((0..n).map(|_| rng.range_i64(-4, 4)).collect());
            let (direct, comb) = mu_dominance(n, &mu).unwrap();
            assert_eq!(direct, comb, "disagreement at {mu}");
        }
    }

    #[test]
    fn bottom_layer_membership() {
        let caps = Caps::default();
        let data = vz_bottom(2, 1, &h("1,-1,0"), &caps).unwrap();
        assert_eq!(data.lambda_p, wt("[-2,2,0]"));
        assert_eq!(data.lambda_p_vee, wt("[1,-1,0]"));
        assert!(data.dominant);
        assert!(data.multiplicity > 0);
        // The trivial parabolic of the pair: everything collapses to zero.
        let data = vz_bottom(1, 1, &h("1,0"), &caps).unwrap();
        assert_eq!(data.lambda_p, wt("[-1,1]"));
        assert!(data.dominant);
        assert!(data.multiplicity > 0);
        let tight = Caps { factor_dim: 1, ..caps };
        assert!(matches!(
            vz_bottom(2, 1, &h("1,-1,0"), &tight),
            Err(Error::CapExceeded(_))
        ));
        assert!(vz_bottom(2, 1, &h("-1,1,0"), &caps).is_err());
    }

    #[test]
    fn block_split_classification() {
        let fk = fernando_kac(1, 1, &h("1,0")).unwrap();
        assert_eq!((fk.a, fk.b), (0, 1));
        assert_eq!(fk.support, FkSupport::KPlusR);
        let fk = fernando_kac(1, 1, &h("0,1")).unwrap();
        assert_eq!((fk.a, fk.b), (1, 0));
        assert_eq!(fk.support, FkSupport::KPlusRbar);
        let fk = fernando_kac(2, 1, &h("2,0,1")).unwrap();
        assert_eq!((fk.a, fk.b), (1, 1));
        assert_eq!(fk.support, FkSupport::KOnly);
        assert!(matches!(
            fernando_kac(2, 1, &h("1,1,1")),
            Err(Error::NotProper(_))
        ));
        assert_eq!(fernando_kac(1, 1, &h("1,0")).unwrap().support.to_string(), "k+r");
    }

    #[test]
    fn bidegree_profiles() {
        assert_eq!(bidegree_profile(0, 0, 2), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(bidegree_profile(1, 1, 3), vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(bidegree_profile(2, 0, 1), vec![(2, 0), (3, 1)]);
        assert!(bidegree_profile(3, 5, 4).iter().all(|&(x, _)| x > 0));
        assert_eq!(bidegree_profile(1, 4, 0), vec![(1, 4)]);
    }
}
