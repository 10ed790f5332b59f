//! Chains of classical algebras and branching along them.
//!
//! Two kinds of chains are supported:
//!
//! - Diagonal towers `gl(p) in gl(p*t1) in gl(p*t1*t2) in ...`, where each
//!   step embeds a matrix `A` as the block-diagonal `diag(A, ..., A)`. The
//!   centralizer of the image of `gl(p)` at level `n` is `gl(Theta_n)` for
//!   `Theta_n = t1 * ... * t_{n-1}`.
//! - Root chains `F(r) in F(r+1) in ...` within one family: the top-left
//!   corner embedding for GL and type A, and the middle embedding for
//!   B, C, D in the antidiagonal matrix realization.
//!
//! Weight padding follows the universal-character convention: append zeros
//! for B/C/D, and for GL insert zeros between the nonnegative and negative
//! parts of the (dominant) weight, so that padding commutes with duality.

use std::fmt;
use std::str::FromStr;

use crate::charring::{decompose, irrep_weights, restrict, Decomposition, TorusMap, WeightMap};
use crate::linalg::integer_nullspace;
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::{Caps, Error, Result};

/// A chain of algebras, parsed from strings like
/// `glptheta:p=2,thetas=2,2,levels=4` or `root:B,start=2,levels=4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSpec {
    Diagonal { p: usize, thetas: Vec<usize>, levels: usize },
    Root { start: LieType, levels: usize },
}

impl ChainSpec {
    pub fn levels(&self) -> usize {
        match self {
            ChainSpec::Diagonal { levels, .. } => *levels,
            ChainSpec::Root { levels, .. } => *levels,
        }
    }

    pub fn with_levels(self, levels: usize) -> ChainSpec {
        match self {
            ChainSpec::Diagonal { p, thetas, .. } => ChainSpec::Diagonal { p, thetas, levels },
            ChainSpec::Root { start, .. } => ChainSpec::Root { start, levels },
        }
    }

    /// For a diagonal chain, the cumulative factors `Theta_1 = 1, Theta_2,
    /// ...` per level; the multiplier list is extended by repeating its last
    /// entry when there are more levels than multipliers.
    pub fn cumulative_thetas(&self) -> Result<Vec<usize>> {
        let ChainSpec::Diagonal { thetas, levels, .. } = self else {
            return Err(Error::InvalidArgument("not a diagonal chain".into()));
        };
        if thetas.is_empty() {
            return Err(Error::InvalidArgument("diagonal chain needs multipliers".into()));
        }
        let mut acc = 1usize;
        let mut out = vec![1usize];
        for k in 1..*levels {
            let t = *thetas.get(k - 1).unwrap_or(thetas.last().unwrap());
            if t < 1 {
                return Err(Error::InvalidArgument("multipliers must be positive".into()));
            }
            acc = acc
                .checked_mul(t)
                .ok_or_else(|| Error::CapExceeded("chain size overflow".into()))?;
            out.push(acc);
        }
        Ok(out)
    }

    /// Ambient algebra type at each level, checked against the matrix cap.
    pub fn level_types(&self, caps: &Caps) -> Result<Vec<LieType>> {
        let types = match self {
            ChainSpec::Diagonal { p, .. } => {
                if *p < 1 {
                    return Err(Error::InvalidArgument("p must be positive".into()));
                }
                self.cumulative_thetas()?
                    .iter()
                    .map(|theta| LieType::new(Family::GL, p * theta))
                    .collect::<Result<Vec<_>>>()?
            }
            ChainSpec::Root { start, levels } => (0..*levels)
                .map(|k| LieType::new(start.family, start.rank + k))
                .collect::<Result<Vec<_>>>()?,
        };
        for t in &types {
            if t.matrix_size() > caps.matrix_size {
                return Err(Error::CapExceeded(format!(
                    "level {t} needs {}x{} matrices, cap is {}",
                    t.matrix_size(),
                    t.matrix_size(),
                    caps.matrix_size
                )));
            }
        }
        Ok(types)
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainSpec::Diagonal { p, thetas, levels } => {
                write!(f, "glptheta:p={p},thetas=")?;
                for (i, t) in thetas.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ",levels={levels}")
            }
            ChainSpec::Root { start, levels } => {
                write!(f, "root:{},start={},levels={levels}", start.family, start.rank)
            }
        }
    }
}

impl FromStr for ChainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ChainSpec> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("chain spec {s:?} needs kind:args")))?;
        match kind.trim() {
            "glptheta" => {
                // key=value fields; a bare token continues the previous list,
                // so thetas=2,2,2 parses as one field.
                let mut fields: Vec<(String, String)> = Vec::new();
                for piece in rest.split(',') {
                    let piece = piece.trim();
                    match piece.split_once('=') {
                        Some((k, v)) => fields.push((k.trim().into(), v.trim().into())),
                        None => match fields.last_mut() {
                            Some(last) => {
                                last.1.push(',');
                                last.1.push_str(piece);
                            }
                            None => {
                                return Err(Error::Parse(format!("stray value {piece:?} in {s:?}")))
                            }
                        },
                    }
                }
                let get = |name: &str| fields.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone());
                let p: usize = get("p")
                    .ok_or_else(|| Error::Parse("diagonal chain needs p=".into()))?
                    .parse()
                    .map_err(|_| Error::Parse("bad p value".into()))?;
                let thetas_raw =
                    get("thetas").ok_or_else(|| Error::Parse("diagonal chain needs thetas=".into()))?;
                let thetas: Vec<usize> = thetas_raw
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| Error::Parse("bad theta value".into())))
                    .collect::<Result<Vec<usize>>>()?;
                let levels = match get("levels") {
                    None => thetas.len() + 1,
                    Some(v) => v.parse().map_err(|_| Error::Parse("bad levels value".into()))?,
                };
                if levels < 1 {
                    return Err(Error::InvalidArgument("levels must be positive".into()));
                }
                Ok(ChainSpec::Diagonal { p, thetas, levels })
            }
            "root" => {
                let mut pieces = rest.split(',');
                let family_token = pieces
                    .next()
                    .map(str::trim)
                    .filter(|t| !t.is_empty() && !t.contains('='))
                    .ok_or_else(|| Error::Parse("root chain needs a leading family".into()))?;
                let mut start_rank: Option<usize> = None;
                let mut levels: Option<usize> = None;
                for piece in pieces {
                    let (k, v) = piece
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("bad field {piece:?} in {s:?}")))?;
                    let v: usize = v
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad value in {piece:?}")))?;
                    match k.trim() {
                        "start" => start_rank = Some(v),
                        "levels" => levels = Some(v),
                        other => return Err(Error::Parse(format!("unknown field {other:?}"))),
                    }
                }
                let start_rank = start_rank.ok_or_else(|| Error::Parse("root chain needs start=".into()))?;
                let levels = levels.ok_or_else(|| Error::Parse("root chain needs levels=".into()))?;
                if levels < 1 {
                    return Err(Error::InvalidArgument("levels must be positive".into()));
                }
                let start: LieType = format!("{family_token}{start_rank}").parse()?;
                Ok(ChainSpec::Root { start, levels })
            }
            other => Err(Error::Parse(format!("unknown chain kind {other:?}"))),
        }
    }
}

/// Pads a dominant weight from one rank to a larger rank of the same family.
pub fn pad_weight(from: LieType, to: LieType, w: &Weight) -> Result<Weight> {
    if from.family != to.family {
        return Err(Error::TypeMismatch(format!(
            "cannot pad across families {from} and {to}"
        )));
    }
    let nf = from.coords();
    let nt = to.coords();
    if w.len() != nf {
        return Err(Error::DimensionMismatch(format!(
            "weight {w} does not fit {from}"
        )));
    }
    if nt < nf {
        return Err(Error::InvalidArgument(format!(
            "cannot pad {from} down to {to}"
        )));
    }
    let sys = RootSystem::simple(from);
    if !sys.is_dominant(w) {
        return Err(Error::NonDominant(format!("{w} is not dominant for {from}")));
    }
    let extra = nt - nf;
    let padded = match from.family {
        Family::GL | Family::A => {
            // Zeros go between the nonnegative and negative entries.
            let split = w.0.iter().filter(|v| **v >= 0).count();
            let mut out = Vec::with_capacity(nt);
            out.extend_from_slice(&w.0[..split]);
            out.extend(std::iter::repeat(0).take(extra));
            out.extend_from_slice(&w.0[split..]);
            out
        }
        Family::B | Family::C | Family::D => {
            if *w.0.last().unwrap() < 0 {
                return Err(Error::InvalidArgument(format!(
                    "{w} ends negatively and has no stable padding in family {}",
                    from.family
                )));
            }
            let mut out = w.0.clone();
            out.extend(std::iter::repeat(0).take(extra));
            out
        }
    };
    Ok(Weight(padded))
}

/// The defining (natural) representation as a weight map.
pub fn natural_rep_map(t: LieType) -> WeightMap {
    let sys = RootSystem::simple(t);
    let n = sys.coords();
    let mut map = WeightMap::new(sys);
    let unit = |i: usize, sign: i64| {
        let mut v = vec![0i64; n];
        v[i] = sign;
        Weight(v)
    };
    match t.family {
        Family::GL | Family::A => {
            for i in 0..n {
                map.add(unit(i, 1), 1);
            }
        }
        Family::B | Family::C | Family::D => {
            for i in 0..n {
                map.add(unit(i, 1), 1);
                map.add(unit(i, -1), 1);
            }
            if t.family == Family::B {
                map.add(Weight::zero(n), 1);
            }
        }
    }
    map
}

/// The bilinear form matrix of the antidiagonal realization, or `None` for
/// GL and type A (the full matrix algebra).
pub fn realization_form(t: LieType) -> Option<Vec<Vec<i64>>> {
    let n = t.matrix_size();
    match t.family {
        Family::GL | Family::A => None,
        Family::B | Family::D => {
            let mut s = vec![vec![0i64; n]; n];
            for i in 0..n {
                s[i][n - 1 - i] = 1;
            }
            Some(s)
        }
        Family::C => {
            let mut s = vec![vec![0i64; n]; n];
            for i in 0..n {
                s[i][n - 1 - i] = if i < n / 2 { 1 } else { -1 };
            }
            Some(s)
        }
    }
}

/// Basis of the realization as integer matrices: all elementary matrices for
/// GL/A, and a nullspace basis of `X^T S + S X = 0` otherwise.
pub fn realization_basis(t: LieType) -> Vec<Vec<Vec<i64>>> {
    let n = t.matrix_size();
    match realization_form(t) {
        None => {
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut m = vec![vec![0i64; n]; n];
                    m[i][j] = 1;
                    out.push(m);
                }
            }
            out
        }
        Some(s) => {
            let mut rows = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    // (X^T S + S X)[i][j] has one term from each product
                    // because S is antidiagonal.
                    let k1 = n - 1 - j;
                    let k2 = n - 1 - i;
                    let mut row = vec![(k1 * n + i, s[k1][j])];
                    let entry = (k2 * n + j, s[i][k2]);
                    if entry.0 == row[0].0 {
                        row[0].1 += entry.1;
                    } else {
                        row.push(entry);
                    }
                    row.retain(|e| e.1 != 0);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
            integer_nullspace(rows, n * n)
                .into_iter()
                .map(|flat| (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect())
                .collect()
        }
    }
}

/// Weight of each matrix position index under the diagonal Cartan, as a
/// vector in the epsilon coordinates of the type.
pub fn realization_position_weights(t: LieType) -> Vec<Vec<i64>> {
    let r = t.coords();
    let n = t.matrix_size();
    let mut out = Vec::with_capacity(n);
    match t.family {
        Family::GL | Family::A => {
            for i in 0..n {
                let mut v = vec![0i64; r];
                v[i] = 1;
                out.push(v);
            }
        }
        Family::B | Family::C | Family::D => {
            for i in 0..n {
                let mut v = vec![0i64; r];
                if i < r {
                    v[i] = 1;
                } else if n - 1 - i < r {
                    v[n - 1 - i] = -1;
                }
                out.push(v);
            }
        }
    }
    out
}

/// Restriction of weights along one or more corner/middle embedding steps
/// within a family.
pub fn chain_torus_map(big: LieType, small: LieType) -> Result<TorusMap> {
    if big.family != small.family {
        return Err(Error::TypeMismatch(format!(
            "no chain between families {big} and {small}"
        )));
    }
    let rb = big.coords();
    let rs = small.coords();
    if rs > rb {
        return Err(Error::InvalidArgument(format!("{small} does not embed in {big}")));
    }
    let shift = match big.family {
        Family::GL | Family::A => 0,
        Family::B | Family::C | Family::D => rb - rs,
    };
    let rows: Vec<Vec<i64>> = (0..rs)
        .map(|i| {
            let mut row = vec![0i64; rb];
            row[i + shift] = 1;
            row
        })
        .collect();
    TorusMap::new(RootSystem::simple(big), RootSystem::simple(small), rows)
}

/// Reads off the multiplicities `(a, b, c)` of the natural representation,
/// its dual (distinct only for GL), and the trivial representation from a
/// decomposition expected to contain nothing else.
fn natural_shape(small: LieType, dec: &Decomposition) -> Result<(usize, usize, usize)> {
    let small_sys = RootSystem::simple(small);
    let n = small_sys.coords();
    let mut v_weight = vec![0i64; n];
    v_weight[0] = 1;
    let v_weight = Weight(v_weight);
    let mut v_dual = vec![0i64; n];
    v_dual[n - 1] = -1;
    let v_dual = Weight(v_dual);
    let zero = Weight::zero(n);
    let mut a = 0usize;
    let mut b = 0usize;
    let mut c = 0usize;
    for (w, m) in dec.constituents() {
        let m = *m as usize;
        if small_sys.weights_equal(w, &v_weight) {
            a = m;
        } else if small.family == Family::GL && small_sys.weights_equal(w, &v_dual) {
            b = m;
        } else if small_sys.weights_equal(w, &zero) {
            c = m;
        } else {
            return Err(Error::NotAModule(format!(
                "unexpected constituent {w} next to the natural representation"
            )));
        }
    }
    Ok((a, b, c))
}

/// Decomposes the natural representation of `big` over `small` along the
/// chain embedding and reports the multiplicities `(a, b, c)` of the natural
/// representation, its dual (when distinct), and the trivial representation.
pub fn natural_restriction(big: LieType, small: LieType) -> Result<(usize, usize, usize)> {
    let tm = chain_torus_map(big, small)?;
    let nat_big = natural_rep_map(big);
    let dec = restrict(&nat_big, &tm)?;
    natural_shape(small, &dec)
}

/// The block-diagonal embedding `A -> diag(A, ..., A)` with `theta` copies.
pub fn diagonal_embed(a: &[Vec<i64>], theta: usize) -> Vec<Vec<i64>> {
    let p = a.len();
    let n = p * theta;
    let mut out = vec![vec![0i64; n]; n];
    for b in 0..theta {
        for i in 0..p {
            for j in 0..p {
                out[b * p + i][b * p + j] = a[i][j];
            }
        }
    }
    out
}

/// The embedded elementary matrices of gl(p) inside gl(p * theta).
pub fn embedded_gl_generators(p: usize, theta: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::with_capacity(p * p);
    for i in 0..p {
        for j in 0..p {
            let mut e = vec![vec![0i64; p]; p];
            e[i][j] = 1;
            out.push(diagonal_embed(&e, theta));
        }
    }
    out
}

/// Weight restriction gl(p * theta) -> gl(p) for the diagonal embedding:
/// basis index J lies in copy `J / p` and carries the gl(p) weight of
/// coordinate `J mod p`.
pub fn diagonal_torus_map(p: usize, theta: usize) -> TorusMap {
    let n = p * theta;
    let rows: Vec<Vec<i64>> = (0..p)
        .map(|i| (0..n).map(|j| if j % p == i { 1 } else { 0 }).collect())
        .collect();
    TorusMap::new(RootSystem::gl(n), RootSystem::gl(p), rows)
        .expect("diagonal torus map is always well formed")
}

/// Weight restriction gl(p * theta) -> gl(theta) onto the centralizer of the
/// diagonally embedded gl(p): index J sees only its copy index `J / p`.
pub fn commutant_torus_map(p: usize, theta: usize) -> TorusMap {
    let n = p * theta;
    let rows: Vec<Vec<i64>> = (0..theta)
        .map(|b| (0..n).map(|j| if j / p == b { 1 } else { 0 }).collect())
        .collect();
    TorusMap::new(RootSystem::gl(n), RootSystem::gl(theta), rows)
        .expect("commutant torus map is always well formed")
}

/// Branches an irreducible of gl(p * theta) over the diagonally embedded
/// gl(p).
pub fn branch_diagonal(p: usize, theta: usize, lam: &Weight, caps: &Caps) -> Result<Decomposition> {
    let n = p * theta;
    if n > caps.matrix_size {
        return Err(Error::CapExceeded(format!(
            "gl({n}) exceeds the matrix cap {}",
            caps.matrix_size
        )));
    }
    let big = RootSystem::gl(n);
    big.check_weight(lam)?;
    if !big.is_dominant(lam) {
        return Err(Error::NonDominant(format!("{lam} is not dominant for {big}")));
    }
    let dim = big.weyl_dim(lam)?;
    if dim > 200_000 {
        return Err(Error::CapExceeded(format!(
            "dimension {dim} is too large for diagonal branching"
        )));
    }
    let map = irrep_weights(&big, lam)?;
    restrict(&map, &diagonal_torus_map(p, theta))
}

/// The opposite-nilradical character of the parabolic of gl(p * theta) cut
/// out by a regular integer element `h` of the embedded gl(p), written in
/// the weight coordinates of the centralizer gl(theta).
pub fn diagonal_nbar_map(p: usize, h: &[i64], theta: usize) -> Result<WeightMap> {
    if h.len() != p {
        return Err(Error::DimensionMismatch(format!(
            "h has {} entries, p = {p}",
            h.len()
        )));
    }
    let sys = RootSystem::gl(theta);
    let mut map = WeightMap::new(sys);
    let unit = |a: usize, b: usize| {
        let mut v = vec![0i64; theta];
        v[a] += 1;
        v[b] -= 1;
        Weight(v)
    };
    for i in 0..p {
        for j in 0..p {
            if h[i] < h[j] {
                // Roots E_{J,K} with J = (a,i), K = (b,j) are negative on h
                // for every pair of copies (a, b).
                for a in 0..theta {
                    for b in 0..theta {
                        map.add(unit(a, b), 1);
                    }
                }
            }
        }
    }
    Ok(map)
}

/// For a root chain: the opposite nilradical cut out by `h` supported on the
/// first `p` coordinates, pushed to the weight coordinates of the "tail"
/// subalgebra on the remaining coordinates. Returns the weight map together
/// with the observed shape `(a, b, c)`: copies of the tail natural
/// representation, of its dual, and trivial summands.
pub fn chain_nbar_tail_map(
    ambient: LieType,
    p: usize,
    h: &[i64],
) -> Result<(WeightMap, (usize, usize, usize))> {
    if h.len() != p {
        return Err(Error::DimensionMismatch(format!(
            "h has {} entries, p = {p}",
            h.len()
        )));
    }
    let n = ambient.coords();
    if p >= n {
        return Err(Error::InvalidArgument(format!(
            "need p < {n} coordinates for a nontrivial tail in {ambient}"
        )));
    }
    let tail_rank = n - p;
    let tail = match ambient.family {
        Family::GL | Family::A => {
            if h.iter().any(|v| *v == 0) {
                return Err(Error::InvalidArgument(
                    "h must have nonzero entries on the first p coordinates".into(),
                ));
            }
            LieType::new(Family::GL, tail_rank)?
        }
        fam => {
            if h.iter().any(|v| *v <= 0) {
                return Err(Error::InvalidArgument(
                    "h must be positive on the first p coordinates for B/C/D chains".into(),
                ));
            }
            LieType::new(fam, tail_rank)?
        }
    };
    let ambient_sys = RootSystem::simple(ambient);
    let mut h_full = vec![0i64; n];
    h_full[..p].copy_from_slice(h);
    let h_full = Weight(h_full);
    let tail_sys = RootSystem::simple(tail);
    let mut map = WeightMap::new(tail_sys);
    for alpha in ambient_sys.positive_roots() {
        for root in [alpha.clone(), alpha.neg()] {
            if h_full.dot(&root) >= 0 {
                continue;
            }
            map.add(Weight(root.0[p..].to_vec()), 1);
        }
    }
    let shape = natural_shape(tail, &decompose(&map)?)?;
    Ok((map, shape))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn wt(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn chain_spec_round_trip() {
        let spec: ChainSpec = "glptheta:p=2,thetas=2,2,2".parse().unwrap();
        assert_eq!(
            spec,
            ChainSpec::Diagonal { p: 2, thetas: vec![2, 2, 2], levels: 4 }
        );
        assert_eq!(spec.to_string(), "glptheta:p=2,thetas=2,2,2,levels=4");
        assert_eq!(spec.to_string().parse::<ChainSpec>().unwrap(), spec);
        let spec: ChainSpec = "root:B,start=2,levels=4".parse().unwrap();
        assert_eq!(spec, ChainSpec::Root { start: t("B2"), levels: 4 });
        assert_eq!(spec.to_string().parse::<ChainSpec>().unwrap(), spec);
        assert!("glptheta:p=2".parse::<ChainSpec>().is_err());
        assert!("root:E,start=1,levels=2".parse::<ChainSpec>().is_err());
    }

    #[test]
    fn chain_levels_and_caps() {
        let spec: ChainSpec = "glptheta:p=2,thetas=2,2".parse().unwrap();
        let caps = Caps::default();
        let types = spec.level_types(&caps).unwrap();
        assert_eq!(
            types,
            vec![t("GL2"), t("GL4"), t("GL8")]
        );
        // Extending levels repeats the last multiplier.
        let spec = spec.with_levels(5);
        assert_eq!(spec.cumulative_thetas().unwrap(), vec![1, 2, 4, 8, 16]);
        let types = spec.level_types(&caps).unwrap();
        assert_eq!(types.last().unwrap(), &t("GL32"));
        let tight = Caps { matrix_size: 8, ..caps };
        assert!(matches!(spec.level_types(&tight), Err(Error::CapExceeded(_))));
        let root: ChainSpec = "root:C,start=2,levels=3".parse().unwrap();
        assert_eq!(root.level_types(&caps).unwrap(), vec![t("C2"), t("C3"), t("C4")]);
    }

    #[test]
    fn padding_rules() {
        assert_eq!(
            pad_weight(t("GL3"), t("GL6"), &wt("[2,1,-1]")).unwrap(),
            wt("[2,1,0,0,0,-1]")
        );
        assert_eq!(
            pad_weight(t("A2"), t("A3"), &wt("[1,0,0]")).unwrap(),
            wt("[1,0,0,0]")
        );
        assert_eq!(
            pad_weight(t("GL2"), t("GL4"), &wt("[-1,-2]")).unwrap(),
            wt("[0,0,-1,-2]")
        );
        assert_eq!(pad_weight(t("B2"), t("B4"), &wt("[2,1]")).unwrap(), wt("[2,1,0,0]"));
        assert_eq!(pad_weight(t("D2"), t("D3"), &wt("[1,1]")).unwrap(), wt("[1,1,0]"));
        assert!(pad_weight(t("D2"), t("D3"), &wt("[1,-1]")).is_err());
        assert!(pad_weight(t("B2"), t("C3"), &wt("[1,0]")).is_err());
        assert!(pad_weight(t("GL3"), t("GL2"), &wt("[1,0,0]")).is_err());
        assert!(pad_weight(t("GL2"), t("GL3"), &wt("[0,1]")).is_err());
        // Padding is transitive.
        let one = pad_weight(t("GL3"), t("GL4"), &wt("[2,1,-1]")).unwrap();
        let two = pad_weight(t("GL4"), t("GL6"), &one).unwrap();
        assert_eq!(two, pad_weight(t("GL3"), t("GL6"), &wt("[2,1,-1]")).unwrap());
        // Padded weights stay dominant.
        let sys = RootSystem::gl(6);
        assert!(sys.is_dominant(&two));
    }

    #[test]
    fn realization_dimensions_and_roots() {
        for name in ["B2", "C2", "D2", "D3", "B1", "C1"] {
            let ty = t(name);
            let basis = realization_basis(ty);
            let sys = RootSystem::simple(ty);
            let expect_dim = 2 * sys.n_positive_roots() + sys.coords();
            assert_eq!(basis.len(), expect_dim, "{name}: algebra dimension");
            let eta = realization_position_weights(ty);
            let mut seen = std::collections::BTreeSet::new();
            let mut cartan_dim = 0;
            for m in &basis {
                let mut weight: Option<Vec<i64>> = None;
                for (k, row) in m.iter().enumerate() {
                    for (l, v) in row.iter().enumerate() {
                        if *v == 0 {
                            continue;
                        }
                        let w: Vec<i64> = eta[k]
                            .iter()
                            .zip(&eta[l])
                            .map(|(a, b)| a - b)
                            .collect();
                        match &weight {
                            None => weight = Some(w),
                            Some(prev) => {
                                assert_eq!(prev, &w, "{name}: basis element mixes weights")
                            }
                        }
                    }
                }
                let w = weight.expect("basis element is nonzero");
                if w.iter().all(|v| *v == 0) {
                    cartan_dim += 1;
                } else {
                    seen.insert(w);
                }
            }
            assert_eq!(cartan_dim, sys.coords(), "{name}: Cartan dimension");
            let expect: std::collections::BTreeSet<Vec<i64>> = sys
                .positive_roots()
                .iter()
                .flat_map(|r| [r.0.clone(), r.neg().0])
                .collect();
            assert_eq!(seen, expect, "{name}: root set");
        }
    }

    #[test]
    fn middle_embedding_stays_in_the_algebra() {
        // Embed so(5) into so(7) by the index shift and check the equation.
        for (small, big) in [(t("B2"), t("B3")), (t("C2"), t("C3")), (t("D2"), t("D3"))] {
            let nb = big.matrix_size();
            let s_big = realization_form(big).unwrap();
            for m in realization_basis(small) {
                let ns = small.matrix_size();
                let mut e = vec![vec![0i64; nb]; nb];
                for i in 0..ns {
                    for j in 0..ns {
                        e[i + 1][j + 1] = m[i][j];
                    }
                }
                // X^T S + S X = 0 for the embedded matrix.
                for i in 0..nb {
                    for j in 0..nb {
                        let mut acc = 0i64;
                        for k in 0..nb {
                            acc += e[k][i] * s_big[k][j] + s_big[i][k] * e[k][j];
                        }
                        assert_eq!(acc, 0, "{small} in {big} at ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn natural_restrictions_along_chains() {
        assert_eq!(natural_restriction(t("GL3"), t("GL2")).unwrap(), (1, 0, 1));
        assert_eq!(natural_restriction(t("GL5"), t("GL3")).unwrap(), (1, 0, 2));
        assert_eq!(natural_restriction(t("A2"), t("A1")).unwrap(), (1, 0, 1));
        assert_eq!(natural_restriction(t("B3"), t("B2")).unwrap(), (1, 0, 2));
        assert_eq!(natural_restriction(t("C3"), t("C2")).unwrap(), (1, 0, 2));
        assert_eq!(natural_restriction(t("D4"), t("D3")).unwrap(), (1, 0, 2));
        assert_eq!(natural_restriction(t("D4"), t("D2")).unwrap(), (1, 0, 4));
    }

    #[test]
    fn diagonal_embedding_and_commutant_maps() {
        let e12 = vec![vec![0, 1], vec![0, 0]];
        let emb = diagonal_embed(&e12, 2);
        assert_eq!(emb[0], vec![0, 1, 0, 0]);
        assert_eq!(emb[2], vec![0, 0, 0, 1]);
        let gens = embedded_gl_generators(2, 3);
        assert_eq!(gens.len(), 4);
        assert_eq!(gens[1][2][3], 1);
        // Torus maps agree with the block-major index convention.
        let tm = diagonal_torus_map(2, 2);
        assert_eq!(tm.apply(&wt("[1,0,0,0]")), wt("[1,0]"));
        assert_eq!(tm.apply(&wt("[0,0,0,1]")), wt("[0,1]"));
        let cm = commutant_torus_map(2, 2);
        assert_eq!(cm.apply(&wt("[1,0,0,0]")), wt("[1,0]"));
        assert_eq!(cm.apply(&wt("[0,0,0,1]")), wt("[0,1]"));
    }

    #[test]
    fn branch_diagonal_exterior_square() {
        let caps = Caps::default();
        let dec = branch_diagonal(2, 2, &wt("[1,1,0,0]"), &caps).unwrap();
        assert_eq!(dec.get(&wt("[2,0]")), 1);
        assert_eq!(dec.get(&wt("[1,1]")), 3);
        assert_eq!(dec.length(), 4);
        // Dimension is preserved by restriction.
        assert_eq!(dec.dim(), 6);
        // The natural rep of gl(4) restricts to two copies of the natural rep.
        let dec = branch_diagonal(2, 2, &wt("[1,0,0,0]"), &caps).unwrap();
        assert_eq!(dec.get(&wt("[1,0]")), 2);
        assert_eq!(dec.length(), 2);
        let tight = Caps { matrix_size: 2, ..caps };
        assert!(matches!(
            branch_diagonal(2, 2, &wt("[1,0,0,0]"), &tight),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn nbar_maps_for_both_chain_kinds() {
        // Diagonal chain, p = 2, regular h: one copy of V (x) V*.
        let map = diagonal_nbar_map(2, &[1, -1], 4).unwrap();
        assert_eq!(map.total_dim(), 16);
        let dec = decompose(&map).unwrap();
        assert_eq!(dec.get(&wt("[1,0,0,-1]")), 1);
        assert_eq!(dec.get(&wt("[0,0,0,0]")), 1);
        assert_eq!(dec.length(), 2);
        // Root chain in gl(5), h = (1,1): the lower-left block is V^2.
        let (map, shape) = chain_nbar_tail_map(t("GL5"), 2, &[1, 1]).unwrap();
        assert_eq!(shape, (2, 0, 0));
        assert_eq!(map.total_dim(), 6);
        // Mixed signs put one copy of V, one of V*, one trivial line.
        let (_, shape) = chain_nbar_tail_map(t("GL5"), 2, &[1, -1]).unwrap();
        assert_eq!(shape, (1, 1, 1));
        // so(7), p = 1: the five tail weights form one natural rep of so(5).
        let (map, shape) = chain_nbar_tail_map(t("B3"), 1, &[1]).unwrap();
        assert_eq!(shape, (1, 0, 0));
        assert_eq!(map.total_dim(), 5);
        // sp(6), p = 1: the long root adds one trivial line.
        let (map, shape) = chain_nbar_tail_map(t("C3"), 1, &[1]).unwrap();
        assert_eq!(shape, (1, 0, 1));
        assert_eq!(map.total_dim(), 5);
        // so(6), p = 1: exactly the natural rep of so(4).
        let (map, shape) = chain_nbar_tail_map(t("D3"), 1, &[1]).unwrap();
        assert_eq!(shape, (1, 0, 0));
        assert_eq!(map.total_dim(), 4);
        assert!(chain_nbar_tail_map(t("B3"), 1, &[-1]).is_err());
        assert!(chain_nbar_tail_map(t("GL3"), 1, &[0]).is_err());
    }
}
