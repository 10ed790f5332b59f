//! Parabolic subalgebras cut out by torus elements, and centralizers of
//! explicit matrix families.
//!
//! A diagonal torus element `h` splits the root spaces of an ambient algebra
//! into the nilradical (roots positive on `h`), the Levi factor (roots
//! vanishing on `h`), and the opposite nilradical. Only the real part of `h`
//! matters for this split; the imaginary part is carried along for display
//! and for callers that track unitary characters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::linalg::{
    clear_row, commutant_equations, distinct_rational_roots, format_rational, integer_nullspace,
    integer_rank, parse_rational, q128_solve, Q, Q128, QMat,
};
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::{Caps, Error, Result};

/// A diagonal torus element with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    pub re: Vec<Q>,
    pub im: Vec<Q>,
}

impl TorusElement {
    pub fn new(re: Vec<Q>, im: Vec<Q>) -> Result<TorusElement> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch(format!(
                "real part has {} entries, imaginary part {}",
                re.len(),
                im.len()
            )));
        }
        Ok(TorusElement { re, im })
    }

    pub fn real(re: Vec<Q>) -> TorusElement {
        let im = vec![Q::zero(); re.len()];
        TorusElement { re, im }
    }

    pub fn from_integers(re: &[i64]) -> TorusElement {
        TorusElement::real(re.iter().map(|&v| Q::from_integer(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    /// Pairing of the real part against an integer weight.
    pub fn re_value(&self, w: &Weight) -> Q {
        debug_assert_eq!(w.len(), self.len());
        let mut acc = Q::zero();
        for (q, v) in self.re.iter().zip(&w.0) {
            acc += *q * Q::from_integer(*v);
        }
        acc
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.re.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(q))?;
        }
        if self.im.iter().any(|q| !q.is_zero()) {
            write!(f, ";")?;
            for (i, q) in self.im.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", format_rational(q))?;
            }
        }
        Ok(())
    }
}

impl FromStr for TorusElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<TorusElement> {
        let s = s.trim();
        let (re_part, im_part) = match s.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let parse_list = |part: &str| -> Result<Vec<Q>> {
            part.trim()
                .trim_start_matches('[')
                .trim_end_matches(']')
                .split(',')
                .map(|piece| parse_rational(piece.trim()))
                .collect()
        };
        let re = parse_list(re_part)?;
        let im = match im_part {
            Some(part) => parse_list(part)?,
            None => vec![Q::zero(); re.len()],
        };
        TorusElement::new(re, im)
    }
}

/// Splits all roots of a system by the sign of their pairing with `h`:
/// positive (nilradical), zero (Levi), negative (opposite nilradical).
pub fn triangular_decomposition(
    sys: &RootSystem,
    h: &TorusElement,
) -> Result<(Vec<Weight>, Vec<Weight>, Vec<Weight>)> {
    if h.len() != sys.coords() {
        return Err(Error::DimensionMismatch(format!(
            "torus element has {} entries, system needs {}",
            h.len(),
            sys.coords()
        )));
    }
    let mut u = Vec::new();
    let mut levi = Vec::new();
    let mut ubar = Vec::new();
    for alpha in sys.positive_roots() {
        for root in [alpha.clone(), alpha.neg()] {
            let v = h.re_value(&root);
            if v.is_positive() {
                u.push(root);
            } else if v.is_zero() {
                levi.push(root);
            } else {
                ubar.push(root);
            }
        }
    }
    Ok((u, levi, ubar))
}

/// The parabolic subalgebra of a simple type determined by a torus element.
#[derive(Debug, Clone)]
pub struct ParabolicData {
    pub ambient: RootSystem,
    /// Isomorphism type of the centralizer of `Re h`.
    pub levi: RootSystem,
    /// Distinct eigenvalue classes in Levi block order: for GL and type A the
    /// real values in decreasing order, otherwise the absolute values with
    /// the zero class last.
    pub classes: Vec<(Q, usize)>,
    pub u_roots: Vec<Weight>,
    pub levi_roots: Vec<Weight>,
    pub ubar_roots: Vec<Weight>,
}

impl ParabolicData {
    /// Dimension of the nilradical.
    pub fn dim_u(&self) -> usize {
        self.u_roots.len()
    }
}

/// Computes the parabolic of the simple type `t` cut out by `h`, together
/// with the isomorphism type of its Levi factor.
pub fn compatible_parabolic(t: LieType, h: &TorusElement) -> Result<ParabolicData> {
    let ambient = RootSystem::simple(t);
    if h.len() != ambient.coords() {
        return Err(Error::DimensionMismatch(format!(
            "torus element has {} entries, {t} needs {}",
            h.len(),
            ambient.coords()
        )));
    }
    let gl_like = matches!(t.family, Family::GL | Family::A);
    // Group coordinates into eigenvalue classes.
    let mut by_value: BTreeMap<Q, usize> = BTreeMap::new();
    for q in &h.re {
        let key = if gl_like { *q } else { q.abs() };
        *by_value.entry(key).or_insert(0) += 1;
    }
    let mut classes: Vec<(Q, usize)> = Vec::new();
    let mut zero_class = 0usize;
    for (value, count) in by_value.into_iter().rev() {
        if !gl_like && value.is_zero() {
            zero_class = count;
        } else {
            classes.push((value, count));
        }
    }
    let mut blocks: Vec<LieType> = classes
        .iter()
        .map(|&(_, size)| LieType::new(Family::GL, size))
        .collect::<Result<Vec<_>>>()?;
    if !gl_like && zero_class > 0 {
        classes.push((Q::zero(), zero_class));
        // so(2) is a torus, so a single leftover coordinate in family D is a
        // GL(1) block.
        let tail = if t.family == Family::D && zero_class == 1 {
            LieType::new(Family::GL, 1)?
        } else {
            LieType::new(t.family, zero_class)?
        };
        blocks.push(tail);
    }
    let levi = RootSystem::product(blocks, t.family == Family::A)?;
    let (u_roots, levi_roots, ubar_roots) = triangular_decomposition(&ambient, h)?;
    debug_assert_eq!(
        levi_roots.len(),
        2 * levi.n_positive_roots(),
        "Levi type does not match the vanishing roots"
    );
    Ok(ParabolicData { ambient, levi, classes, u_roots, levi_roots, ubar_roots })
}

/// Number of positive roots of a subsystem that pair positively with `h`.
pub fn s_value(k0: &RootSystem, h: &TorusElement) -> Result<usize> {
    if h.len() != k0.coords() {
        return Err(Error::DimensionMismatch(format!(
            "torus element has {} entries, system needs {}",
            h.len(),
            k0.coords()
        )));
    }
    Ok(k0
        .positive_roots()
        .iter()
        .filter(|alpha| h.re_value(alpha).is_positive())
        .count())
}

/// The pair gl(p+q) with block subalgebra gl(p) x gl(q): compact roots stay
/// within a block, noncompact roots cross between blocks.
#[derive(Debug, Clone)]
pub struct SymmetricPairData {
    pub p: usize,
    pub q: usize,
    ambient: RootSystem,
    k0: RootSystem,
}

/// Root counts of the triangular pieces split into compact and noncompact
/// parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionDims {
    pub u_compact: usize,
    pub u_noncompact: usize,
    pub levi_compact: usize,
    pub levi_noncompact: usize,
    pub ubar_compact: usize,
    pub ubar_noncompact: usize,
}

impl SymmetricPairData {
    pub fn new(p: usize, q: usize) -> Result<SymmetricPairData> {
        if p == 0 || q == 0 {
            return Err(Error::NotSymmetricSetup(
                "both blocks of the pair must be nonempty".into(),
            ));
        }
        let ambient = RootSystem::gl(p + q);
        let k0 = RootSystem::product(
            vec![LieType::new(Family::GL, p)?, LieType::new(Family::GL, q)?],
            false,
        )?;
        Ok(SymmetricPairData { p, q, ambient, k0 })
    }

    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    pub fn k0(&self) -> &RootSystem {
        &self.k0
    }

    /// A root is compact when its support stays on one side of the block
    /// split.
    pub fn is_compact(&self, root: &Weight) -> bool {
        let head = root.0[..self.p].iter().any(|v| *v != 0);
        let tail = root.0[self.p..].iter().any(|v| *v != 0);
        !(head && tail)
    }

    pub fn s(&self, h: &TorusElement) -> Result<usize> {
        s_value(&self.k0, h)
    }

    pub fn intersection_dims(&self, h: &TorusElement) -> Result<IntersectionDims> {
        let (u, levi, ubar) = triangular_decomposition(&self.ambient, h)?;
        let count = |roots: &[Weight]| {
            let compact = roots.iter().filter(|r| self.is_compact(r)).count();
            (compact, roots.len() - compact)
        };
        let (uc, un) = count(&u);
        let (lc, ln) = count(&levi);
        let (bc, bn) = count(&ubar);
        Ok(IntersectionDims {
            u_compact: uc,
            u_noncompact: un,
            levi_compact: lc,
            levi_noncompact: ln,
            ubar_compact: bc,
            ubar_noncompact: bn,
        })
    }
}

/// Centralizer of a family of integer matrices inside the full matrix
/// algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerInfo {
    pub dim: usize,
    /// Sizes of the simple summands gl(k) when they could be identified;
    /// `None` means only the dimension is reported.
    pub blocks: Option<Vec<usize>>,
}

/// Computes the centralizer of `mats` in the n x n matrices: its dimension
/// always, and its decomposition into gl(k) summands when the identification
/// succeeds within the configured caps.
///
/// The block identification assumes the span of `mats` acts completely
/// reducibly, which holds for the reductive subalgebras built in this crate.
pub fn centralizer(n: usize, mats: &[Vec<Vec<i64>>], caps: &Caps) -> Result<CentralizerInfo> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrices must be nonempty".into()));
    }
    if n > caps.matrix_size {
        return Err(Error::CapExceeded(format!(
            "{n}x{n} matrices exceed the cap {}",
            caps.matrix_size
        )));
    }
    for m in mats {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("matrices must be {n}x{n}")));
        }
    }
    let basis = integer_nullspace(commutant_equations(mats, n), n * n);
    let dim = basis.len();
    if dim == n * n {
        // Only scalars were imposed, so the centralizer is all of gl(n).
        return Ok(CentralizerInfo { dim, blocks: Some(vec![n]) });
    }
    let as_matrix =
        |flat: &[i64]| -> Vec<Vec<i64>> { (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect() };
    let basis_mats: Vec<Vec<Vec<i64>>> = basis.iter().map(|b| as_matrix(b)).collect();
    // Center of the centralizer: combinations commuting with every basis
    // element. Unknowns are the coefficients in the basis.
    let mut center_rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for b in &basis_mats {
        for i in 0..n {
            for j in 0..n {
                let mut row = Vec::new();
                for (k, c) in basis_mats.iter().enumerate() {
                    let mut acc: i64 = 0;
                    for l in 0..n {
                        acc += c[i][l] * b[l][j] - b[i][l] * c[l][j];
                    }
                    if acc != 0 {
                        row.push((k, acc));
                    }
                }
                if !row.is_empty() {
                    center_rows.push(row);
                }
            }
        }
    }
    let center_coeffs = integer_nullspace(center_rows, dim);
    let m = center_coeffs.len();
    if m == 1 {
        // One simple summand: gl(d) with d^2 = dim.
        let d = (dim as f64).sqrt().round() as usize;
        if d * d == dim {
            return Ok(CentralizerInfo { dim, blocks: Some(vec![d]) });
        }
        return Ok(CentralizerInfo { dim, blocks: None });
    }
    if n > 32 || dim > 256 {
        return Ok(CentralizerInfo { dim, blocks: None });
    }
    let blocks = identify_blocks(n, dim, &basis_mats, &center_coeffs);
    Ok(CentralizerInfo { dim, blocks })
}

/// Splits a centralizer into gl(k) summands via a generic central element:
/// its distinct eigenvalues give the central idempotents, and the rank of the
/// projected basis is k^2 for each summand.
fn identify_blocks(
    n: usize,
    dim: usize,
    basis_mats: &[Vec<Vec<i64>>],
    center_coeffs: &[Vec<i64>],
) -> Option<Vec<usize>> {
    let m = center_coeffs.len();
    // A combination of the center basis separates the summands when its
    // eigenvalues are distinct per summand, which shows up as a minimal
    // polynomial of degree m. A Vandermonde argument makes one of the power
    // weightings below work.
    let mut split = None;
    for exponent in 1..=3u32 {
        let mut z = vec![vec![0i128; n]; n];
        for (t, coeffs) in center_coeffs.iter().enumerate() {
            for (c, b) in coeffs.iter().zip(basis_mats) {
                if *c == 0 {
                    continue;
                }
                let scale = (*c as i128) * (t as i128 + 1).pow(exponent);
                for i in 0..n {
                    for j in 0..n {
                        z[i][j] += scale * b[i][j] as i128;
                    }
                }
            }
        }
        let Some(minpoly) = integer_min_poly(n, &z) else { continue };
        let Some(roots) = distinct_rational_roots(&minpoly) else { continue };
        if roots.len() == m {
            split = Some((z, roots));
            break;
        }
    }
    let (z, roots) = split?;
    let zq = QMat(
        z.iter()
            .map(|row| row.iter().map(|&v| Q128::from_integer(v)).collect())
            .collect(),
    );
    let mut blocks = Vec::new();
    let mut total = 0usize;
    for (i, &li) in roots.iter().enumerate() {
        let mut proj = QMat::identity(n);
        for (j, &lj) in roots.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = zq.add_scaled(&QMat::identity(n), -lj).scale((li - lj).recip());
            proj = proj.mul(&factor);
        }
        // Rank of the projected centralizer is k^2 for the summand gl(k).
        let rows: Vec<Vec<(usize, i64)>> = basis_mats
            .iter()
            .map(|b| {
                let pbp = proj.mul(&QMat::from_int(b)).mul(&proj);
                let flat: Vec<Q128> = pbp.0.into_iter().flatten().collect();
                clear_row(&flat)
            })
            .collect();
        let rank = integer_rank(rows);
        let k = (rank as f64).sqrt().round() as usize;
        if k * k != rank || k == 0 {
            return None;
        }
        total += rank;
        blocks.push(k);
    }
    if total != dim {
        return None;
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    Some(blocks)
}

/// Minimal polynomial of an integer matrix, as integer coefficients from the
/// constant term up to a monic lead. Returns `None` on overflow while the
/// powers are accumulated.
fn integer_min_poly(n: usize, z: &[Vec<i128>]) -> Option<Vec<i128>> {
    let flatten = |m: &[Vec<i128>]| -> Vec<Q128> {
        m.iter().flatten().map(|&v| Q128::from_integer(v)).collect()
    };
    let mut power = vec![vec![0i128; n]; n];
    for (i, row) in power.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut flats: Vec<Vec<Q128>> = vec![flatten(&power)];
    for _ in 0..n {
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = power[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = z[k][j];
                    if b == 0 {
                        continue;
                    }
                    next[i][j] = next[i][j].checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        let target = flatten(&next);
        if let Some(coeffs) = q128_solve(&flats, &target) {
            // x^k - sum c_j x^j; the coefficients of an integer matrix are
            // integers because the polynomial is monic.
            let mut out: Vec<i128> = Vec::with_capacity(coeffs.len() + 1);
            for c in coeffs {
                if *c.denom() != 1 {
                    return None;
                }
                out.push(-c.numer());
            }
            out.push(1);
            return Some(out);
        }
        flats.push(target);
        power = next;
    }
    None
}
