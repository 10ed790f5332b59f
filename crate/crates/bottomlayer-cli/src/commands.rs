//! Subcommand definitions and handlers.
//!
//! Every handler returns the normalized parameter echo (what goes into the
//! output header) together with a [`Rendered`] body. Parameters are echoed in
//! their parsed display forms, not verbatim, so that re-running a header
//! reproduces the output byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use clap::Subcommand;
use serde_json::{json, Value};

use bottomlayer::charring::{irrep_weights, restrict, tensor, Decomposition};
use bottomlayer::induction::{
    bbw_cohomology, fernando_kac, mu_dominance, nu_check, vz_bottom, vz_lambda, BbwCohomology,
};
use bottomlayer::linalg::format_rational;
use bottomlayer::parabolic::{centralizer, compatible_parabolic, s_value, TorusElement};
use bottomlayer::rootdata::{Family, LieType, RootSystem, Weight};
use bottomlayer::stabilize::{finite_type_probe, stabilization_scan};
use bottomlayer::towers::{branch_diagonal, chain_torus_map, embedded_gl_generators, pad_weight, ChainSpec};
use bottomlayer::verify::{run_all, run_suite, CheckReport, SUITE_NAMES};
use bottomlayer::{Caps, Error, Result};

use crate::output::Rendered;

pub struct Ctx {
    pub caps: Caps,
    pub seed: u64,
}

#[derive(Subcommand)]
pub enum Commands {
    /// List the positive roots of a classical type.
    Roots {
        /// Lie type, e.g. GL3, A2, B2, C3, D4, sl3, sp4, so5.
        #[arg(long = "type")]
        type_: String,
    },
    /// Print the half sum of positive roots.
    Rho {
        #[arg(long = "type")]
        type_: String,
    },
    /// Move a weight to the dominant chamber.
    Dominant {
        #[arg(long = "type")]
        type_: String,
        /// Weight in coordinates, e.g. [3,-1,2].
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Dimension of the irreducible with a given highest weight.
    WeylDim {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Decompose a tensor product of two irreducibles.
    Tensor {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Branch an irreducible to the tail subalgebra of the same family.
    Branch {
        /// Ambient type.
        #[arg(long)]
        from: String,
        /// Subalgebra type, embedded on the trailing coordinates.
        #[arg(long)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Branch a GL(p*theta) irreducible to diagonally embedded GL(p).
    BranchDiagonal {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        theta: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Pad a weight from one type into a larger type of the same family.
    Pad {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Parabolic attached to a rational torus element.
    Parabolic {
        #[arg(long = "type")]
        type_: String,
        /// Torus element, e.g. [1,-1,0] or 1/2,-1/2.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Centralizer of the diagonally embedded GL(p) inside gl(p*theta).
    Centralizer {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        theta: usize,
    },
    /// Number of positive roots of gl(p) x gl(q) pairing positively with h.
    SValue {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Dominant shift of a weight by the dot action, with its degree.
    NuCheck {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Bottom layer data for a block torus element in gl(p+q).
    BottomLayer {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Sheaf cohomology of a line bundle weight on the flag variety.
    Bbw {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Test a gl(n) weight for dominance directly and after closing gaps.
    MuDominance {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Nilradical character twist attached to a torus element.
    VzLambda {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Bottom layer nonvanishing test.
    VzBottom {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Classify the symmetric pair module generated from a torus element.
    FernandoKac {
        /// Optional total size check; must equal p + q when present.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Scan tensor power lengths along a rank ladder until they stabilize.
    Stabilize {
        /// Family: sl, b, c or d.
        #[arg(long)]
        family: String,
        /// Copies of the vector module.
        #[arg(long)]
        a: usize,
        /// Copies of the dual vector module.
        #[arg(long)]
        b: usize,
        /// Copies of the trivial module.
        #[arg(long)]
        c: usize,
        /// Tensor power.
        #[arg(long)]
        k: usize,
        /// Inclusive rank window, e.g. 2..6.
        #[arg(long)]
        n: String,
    },
    /// Probe commutant multiplicity growth along an embedding chain.
    FiniteType {
        /// Chain, e.g. glptheta:p=2,thetas=2,2,2 or root:A,start=2,levels=3.
        #[arg(long)]
        chain: String,
        /// Torus element of the base, integer coordinates.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Optional seed weights, separated by semicolons.
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
        /// Largest tensor degree to track.
        #[arg(long)]
        t: usize,
    },
    /// Run randomized consistency sweeps.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

type Outcome = (Vec<(&'static str, String)>, Rendered);

pub fn dispatch(cmd: &Commands, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        Commands::Roots { type_ } => roots_cmd(type_),
        Commands::Rho { type_ } => rho_cmd(type_),
        Commands::Dominant { type_, weight } => dominant_cmd(type_, weight),
        Commands::WeylDim { type_, weight } => weyl_dim_cmd(type_, weight),
        Commands::Tensor { type_, lhs, rhs } => tensor_cmd(type_, lhs, rhs),
        Commands::Branch { from, to, weight } => branch_cmd(from, to, weight),
        Commands::BranchDiagonal { p, theta, weight } => {
            branch_diagonal_cmd(*p, *theta, weight, ctx)
        }
        Commands::Pad { from, to, weight } => pad_cmd(from, to, weight),
        Commands::Parabolic { type_, h } => parabolic_cmd(type_, h),
        Commands::Centralizer { p, theta } => centralizer_cmd(*p, *theta, ctx),
        Commands::SValue { p, q, h } => s_value_cmd(*p, *q, h),
        Commands::NuCheck { type_, h, nu } => nu_check_cmd(type_, h, nu),
        Commands::BottomLayer { p, q, h } => bottom_layer_cmd(*p, *q, h, ctx),
        Commands::Bbw { type_, nu } => bbw_cmd(type_, nu),
        Commands::MuDominance { n, mu } => mu_dominance_cmd(*n, mu),
        Commands::VzLambda { h } => vz_lambda_cmd(h),
        Commands::VzBottom { p, q, h } => vz_bottom_cmd(*p, *q, h, ctx),
        Commands::FernandoKac { n, p, q, h } => fernando_kac_cmd(*n, *p, *q, h),
        Commands::Stabilize { family, a, b, c, k, n } => {
            stabilize_cmd(family, *a, *b, *c, *k, n, ctx)
        }
        Commands::FiniteType { chain, h, e, t } => finite_type_cmd(chain, h, e.as_deref(), *t, ctx),
        Commands::Verify { suite } => verify_cmd(suite, ctx),
    }
}

fn parse_type(s: &str) -> Result<LieType> {
    s.parse()
}

fn parse_weight(s: &str) -> Result<Weight> {
    s.parse()
}

fn parse_torus(s: &str) -> Result<TorusElement> {
    s.parse()
}

fn weight_value(w: &Weight) -> Value {
    Value::from(w.0.clone())
}

fn parse_family(s: &str) -> Result<Family> {
    match s.to_ascii_lowercase().as_str() {
        "a" | "sl" | "gl" => Ok(Family::A),
        "b" | "so-odd" => Ok(Family::B),
        "c" | "sp" => Ok(Family::C),
        "d" | "so-even" => Ok(Family::D),
        other => Err(Error::Parse(format!(
            "unknown family {other:?}; use sl, b, c or d"
        ))),
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::A | Family::GL => "sl",
        Family::B => "b",
        Family::C => "c",
        Family::D => "d",
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let err = || Error::Parse(format!("range {s:?} is not of the form lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(err)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| err())?;
    let hi: usize = hi.trim().parse().map_err(|_| err())?;
    if hi < lo {
        return Err(err());
    }
    Ok((lo, hi))
}

fn dec_value(dec: &Decomposition) -> Value {
    let constituents: Vec<Value> = dec
        .constituents()
        .iter()
        .map(|(w, m)| json!({ "weight": weight_value(w), "mult": m }))
        .collect();
    json!({
        "length": dec.length(),
        "dim": dec.dim().to_string(),
        "constituents": constituents,
    })
}

fn dec_rendered(dec: &Decomposition, intro: String) -> Rendered {
    let mut r = Rendered::new(dec_value(dec));
    r.columns = vec!["weight".into(), "mult".into()];
    r.pretty.push(intro);
    for (w, m) in dec.constituents() {
        r.rows.push(vec![w.to_string(), m.to_string()]);
        r.pretty.push(format!("  {m} x V({w})"));
    }
    r.pretty.push(format!("length: {}", dec.length()));
    r.pretty.push(format!("dim: {}", dec.dim()));
    r
}

fn roots_cmd(type_: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let sys = RootSystem::simple(t);
    let roots = sys.positive_roots();
    let result = json!({
        "type": t.to_string(),
        "coords": sys.coords(),
        "count": roots.len(),
        "positive_roots": roots.iter().map(weight_value).collect::<Vec<_>>(),
        "two_rho": weight_value(&sys.two_rho()),
    });
    let mut r = Rendered::new(result);
    r.columns = vec!["root".into()];
    r.pretty.push(format!("type: {t}"));
    r.pretty.push(format!("positive roots: {}", roots.len()));
    for root in &roots {
        r.rows.push(vec![root.to_string()]);
        r.pretty.push(format!("  {root}"));
    }
    r.pretty.push(format!("two_rho: {}", sys.two_rho()));
    Ok((vec![("type", t.to_string())], r))
}

fn rho_cmd(type_: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let sys = RootSystem::simple(t);
    let result = json!({
        "rho": sys.rho().to_string(),
        "two_rho": weight_value(&sys.two_rho()),
    });
    let r = Rendered::keyed(
        result,
        vec![
            ("rho".into(), sys.rho().to_string()),
            ("two_rho".into(), sys.two_rho().to_string()),
        ],
    );
    Ok((vec![("type", t.to_string())], r))
}

fn dominant_cmd(type_: &str, weight: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let w = parse_weight(weight)?;
    let sys = RootSystem::simple(t);
    sys.check_weight(&w)?;
    let dom = sys.dominant_rep(&w);
    let result = json!({
        "input": weight_value(&w),
        "is_dominant": sys.is_dominant(&w),
        "dominant": weight_value(&dom),
    });
    let r = Rendered::keyed(
        result,
        vec![
            ("input".into(), w.to_string()),
            ("dominant".into(), dom.to_string()),
            ("is_dominant".into(), sys.is_dominant(&w).to_string()),
        ],
    );
    Ok((vec![("type", t.to_string()), ("weight", w.to_string())], r))
}

fn weyl_dim_cmd(type_: &str, weight: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let w = parse_weight(weight)?;
    let sys = RootSystem::simple(t);
    let dim = sys.weyl_dim(&w)?;
    let result = json!({ "dim": dim.to_string() });
    let r = Rendered::keyed(result, vec![("dim".into(), dim.to_string())]);
    Ok((vec![("type", t.to_string()), ("weight", w.to_string())], r))
}

fn tensor_cmd(type_: &str, lhs: &str, rhs: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let l = parse_weight(lhs)?;
    let m = parse_weight(rhs)?;
    let sys = RootSystem::simple(t);
    let dec = tensor(&sys, &l, &m)?;
    let r = dec_rendered(&dec, format!("V({l}) (x) V({m}) in type {t}"));
    let params = vec![
        ("type", t.to_string()),
        ("lhs", l.to_string()),
        ("rhs", m.to_string()),
    ];
    Ok((params, r))
}

fn branch_cmd(from: &str, to: &str, weight: &str) -> Result<Outcome> {
    let big = parse_type(from)?;
    let small = parse_type(to)?;
    let w = parse_weight(weight)?;
    let sys = RootSystem::simple(big);
    sys.check_weight(&w)?;
    let map = irrep_weights(&sys, &sys.dominant_rep(&w))?;
    let dec = restrict(&map, &chain_torus_map(big, small)?)?;
    let r = dec_rendered(&dec, format!("V({w}) from {big} to {small}"));
    let params = vec![
        ("from", big.to_string()),
        ("to", small.to_string()),
        ("weight", w.to_string()),
    ];
    Ok((params, r))
}

fn branch_diagonal_cmd(p: usize, theta: usize, weight: &str, ctx: &Ctx) -> Result<Outcome> {
    let w = parse_weight(weight)?;
    let dec = branch_diagonal(p, theta, &w, &ctx.caps)?;
    let intro = format!("V({w}) of GL{} over diagonal GL{p}", p * theta);
    let r = dec_rendered(&dec, intro);
    let params = vec![
        ("p", p.to_string()),
        ("theta", theta.to_string()),
        ("weight", w.to_string()),
    ];
    Ok((params, r))
}

fn pad_cmd(from: &str, to: &str, weight: &str) -> Result<Outcome> {
    let small = parse_type(from)?;
    let big = parse_type(to)?;
    let w = parse_weight(weight)?;
    let padded = pad_weight(small, big, &w)?;
    let result = json!({ "padded": weight_value(&padded) });
    let r = Rendered::keyed(result, vec![("padded".into(), padded.to_string())]);
    let params = vec![
        ("from", small.to_string()),
        ("to", big.to_string()),
        ("weight", w.to_string()),
    ];
    Ok((params, r))
}

fn parabolic_cmd(type_: &str, h: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let elt = parse_torus(h)?;
    let data = compatible_parabolic(t, &elt)?;
    let classes: Vec<Value> = data
        .classes
        .iter()
        .map(|(q, size)| json!({ "size": size, "value": format_rational(q) }))
        .collect();
    let class_line = data
        .classes
        .iter()
        .map(|(q, size)| format!("{}x{}", format_rational(q), size))
        .collect::<Vec<_>>()
        .join(" ");
    let result = json!({
        "ambient": data.ambient.to_string(),
        "levi": data.levi.to_string(),
        "classes": classes,
        "dim_u": data.dim_u(),
        "levi_roots": data.levi_roots.len(),
        "u_roots": data.u_roots.iter().map(weight_value).collect::<Vec<_>>(),
    });
    let u_line = data
        .u_roots
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let r = Rendered::keyed(
        result,
        vec![
            ("ambient".into(), data.ambient.to_string()),
            ("levi".into(), data.levi.to_string()),
            ("classes".into(), class_line),
            ("dim_u".into(), data.dim_u().to_string()),
            ("levi_roots".into(), data.levi_roots.len().to_string()),
            ("u_roots".into(), u_line),
        ],
    );
    Ok((vec![("type", t.to_string()), ("h", elt.to_string())], r))
}

fn centralizer_cmd(p: usize, theta: usize, ctx: &Ctx) -> Result<Outcome> {
    if p == 0 || theta == 0 {
        return Err(Error::InvalidArgument("p and theta must be positive".into()));
    }
    let mats = embedded_gl_generators(p, theta);
    let info = centralizer(p * theta, &mats, &ctx.caps)?;
    let blocks_value = match &info.blocks {
        Some(blocks) => Value::from(blocks.clone()),
        None => Value::Null,
    };
    let result = json!({ "n": p * theta, "dim": info.dim, "blocks": blocks_value });
    let blocks_line = match &info.blocks {
        Some(blocks) => blocks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        None => "unknown".into(),
    };
    let r = Rendered::keyed(
        result,
        vec![
            ("n".into(), (p * theta).to_string()),
            ("dim".into(), info.dim.to_string()),
            ("blocks".into(), blocks_line),
        ],
    );
    Ok((vec![("p", p.to_string()), ("theta", theta.to_string())], r))
}

fn block_system(p: usize, q: usize) -> Result<RootSystem> {
    RootSystem::product(
        vec![LieType::new(Family::GL, p)?, LieType::new(Family::GL, q)?],
        true,
    )
}

fn s_value_cmd(p: usize, q: usize, h: &str) -> Result<Outcome> {
    let elt = parse_torus(h)?;
    let k0 = block_system(p, q)?;
    let s = s_value(&k0, &elt)?;
    let result = json!({ "s": s });
    let r = Rendered::keyed(result, vec![("s".into(), s.to_string())]);
    let params = vec![("p", p.to_string()), ("q", q.to_string()), ("h", elt.to_string())];
    Ok((params, r))
}

fn nu_check_cmd(type_: &str, h: &str, nu: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let elt = parse_torus(h)?;
    let w = parse_weight(nu)?;
    let sys = RootSystem::simple(t);
    sys.check_weight(&w)?;
    let vee = nu_check(&sys, &elt, &w)?;
    let s = s_value(&sys, &elt)?;
    let dominant = sys.is_dominant(&vee);
    let vee_value = if dominant {
        weight_value(&vee)
    } else {
        Value::from("non-dominant")
    };
    let result = json!({ "nu": weight_value(&w), "nu_check": vee_value, "degree": s });
    let vee_line = if dominant { vee.to_string() } else { "non-dominant".into() };
    let r = Rendered::keyed(
        result,
        vec![
            ("nu".into(), w.to_string()),
            ("nu_check".into(), vee_line),
            ("degree".into(), s.to_string()),
        ],
    );
    let params = vec![
        ("type", t.to_string()),
        ("h", elt.to_string()),
        ("nu", w.to_string()),
    ];
    Ok((params, r))
}

fn bottom_layer_cmd(p: usize, q: usize, h: &str, ctx: &Ctx) -> Result<Outcome> {
    let elt = parse_torus(h)?;
    let data = vz_bottom(p, q, &elt, &ctx.caps)?;
    let result = json!({
        "lambda_p": weight_value(&data.lambda_p),
        "lambda_p_vee": weight_value(&data.lambda_p_vee),
        "dominant": data.dominant,
        "multiplicity": data.multiplicity,
    });
    let r = Rendered::keyed(
        result,
        vec![
            ("lambda_p".into(), data.lambda_p.to_string()),
            ("lambda_p_vee".into(), data.lambda_p_vee.to_string()),
            ("dominant".into(), data.dominant.to_string()),
            ("multiplicity".into(), data.multiplicity.to_string()),
        ],
    );
    let params = vec![("p", p.to_string()), ("q", q.to_string()), ("h", elt.to_string())];
    Ok((params, r))
}

fn bbw_cmd(type_: &str, nu: &str) -> Result<Outcome> {
    let t = parse_type(type_)?;
    let w = parse_weight(nu)?;
    let sys = RootSystem::simple(t);
    sys.check_weight(&w)?;
    let (result, pairs) = match bbw_cohomology(&sys, &w)? {
        BbwCohomology::Zero => (
            json!({ "vanishes": true, "degree": Value::Null, "weight": Value::Null }),
            vec![("vanishes".into(), "true".to_string())],
        ),
        BbwCohomology::Class { degree, weight } => (
            json!({ "vanishes": false, "degree": degree, "weight": weight_value(&weight) }),
            vec![
                ("vanishes".into(), "false".to_string()),
                ("degree".into(), degree.to_string()),
                ("weight".into(), weight.to_string()),
            ],
        ),
    };
    let r = Rendered::keyed(result, pairs);
    Ok((vec![("type", t.to_string()), ("nu", w.to_string())], r))
}

fn mu_dominance_cmd(n: usize, mu: &str) -> Result<Outcome> {
    let w = parse_weight(mu)?;
    let (direct, gaps) = mu_dominance(n, &w)?;
    let result = json!({ "direct": direct, "gaps": gaps });
    let r = Rendered::keyed(
        result,
        vec![
            ("direct".into(), direct.to_string()),
            ("gaps".into(), gaps.to_string()),
        ],
    );
    Ok((vec![("n", n.to_string()), ("mu", w.to_string())], r))
}

fn vz_lambda_cmd(h: &str) -> Result<Outcome> {
    let elt = parse_torus(h)?;
    let lam = vz_lambda(&elt)?;
    let result = json!({ "lambda_p": weight_value(&lam) });
    let r = Rendered::keyed(result, vec![("lambda_p".into(), lam.to_string())]);
    Ok((vec![("h", elt.to_string())], r))
}

fn vz_bottom_cmd(p: usize, q: usize, h: &str, ctx: &Ctx) -> Result<Outcome> {
    let elt = parse_torus(h)?;
    let data = vz_bottom(p, q, &elt, &ctx.caps)?;
    let nonzero = data.dominant && data.multiplicity >= 1;
    let result = json!({ "nonzero": nonzero, "multiplicity": data.multiplicity });
    let r = Rendered::keyed(
        result,
        vec![
            ("nonzero".into(), nonzero.to_string()),
            ("multiplicity".into(), data.multiplicity.to_string()),
        ],
    );
    let params = vec![("p", p.to_string()), ("q", q.to_string()), ("h", elt.to_string())];
    Ok((params, r))
}

fn fernando_kac_cmd(n: Option<usize>, p: usize, q: usize, h: &str) -> Result<Outcome> {
    if let Some(n) = n {
        if n != p + q {
            return Err(Error::InvalidArgument(format!(
                "n = {n} does not match p + q = {}",
                p + q
            )));
        }
    }
    let elt = parse_torus(h)?;
    let data = fernando_kac(p, q, &elt)?;
    let result = json!({ "case": data.support.as_str(), "a": data.a, "b": data.b });
    let r = Rendered::keyed(
        result,
        vec![
            ("case".into(), data.support.as_str().to_string()),
            ("a".into(), data.a.to_string()),
            ("b".into(), data.b.to_string()),
        ],
    );
    let mut params = Vec::new();
    if let Some(n) = n {
        params.push(("n", n.to_string()));
    }
    params.push(("p", p.to_string()));
    params.push(("q", q.to_string()));
    params.push(("h", elt.to_string()));
    Ok((params, r))
}

fn scan_level_type(family: Family, rank: usize) -> LieType {
    match family {
        Family::A | Family::GL => LieType { family: Family::GL, rank: rank + 1 },
        f => LieType { family: f, rank },
    }
}

fn stabilize_cmd(
    family: &str,
    a: usize,
    b: usize,
    c: usize,
    k: usize,
    n: &str,
    ctx: &Ctx,
) -> Result<Outcome> {
    let fam = parse_family(family)?;
    let (lo, hi) = parse_range(n)?;
    // In the sl numbering n counts matrix size, so rank lo - 1; elsewhere rank lo.
    let offset = match fam {
        Family::A | Family::GL => 1,
        _ => 0,
    };
    if lo <= offset {
        return Err(Error::InvalidArgument(format!(
            "window {n} starts below the smallest admissible rank"
        )));
    }
    let start = lo - offset;
    let levels = hi - lo + 1;
    let report = stabilization_scan(fam, start, levels, k, (a, b, c), &ctx.caps)?;
    let top = scan_level_type(fam, start + levels - 1);

    let mut labels: BTreeSet<String> = BTreeSet::new();
    let mut rows_data: Vec<(usize, i64, BTreeMap<String, i64>)> = Vec::new();
    let mut level_values: Vec<Value> = Vec::new();
    for level in &report.levels {
        let t = scan_level_type(fam, level.rank);
        let display_n = level.rank + offset;
        let mut cells = BTreeMap::new();
        let mut constituent_values = Vec::new();
        for (w, m) in &level.constituents {
            let transient = level.transient.iter().any(|(tw, _)| tw == w);
            let label = if transient {
                format!("{w}@n{display_n}")
            } else {
                pad_weight(t, top, w)?.to_string()
            };
            labels.insert(label.clone());
            cells.insert(label, *m);
            constituent_values.push(json!({
                "weight": weight_value(w),
                "mult": m,
                "transient": transient,
            }));
        }
        level_values.push(json!({
            "n": display_n,
            "length": level.length,
            "constituents": constituent_values,
        }));
        rows_data.push((display_n, level.length, cells));
    }

    let n0_value = match report.n0 {
        Some(rank) => Value::from(rank + offset),
        None => Value::Null,
    };
    let result = json!({
        "family": family_name(fam),
        "module": [report.module.0, report.module.1, report.module.2],
        "k": report.power,
        "n0": n0_value,
        "stabilized": report.stabilized,
        "levels": level_values,
    });

    let mut r = Rendered::new(result);
    r.columns = vec!["n".into(), "length".into()];
    r.columns.extend(labels.iter().cloned());
    for (display_n, length, cells) in &rows_data {
        let mut row = vec![display_n.to_string(), length.to_string()];
        for label in &labels {
            row.push(cells.get(label).map_or_else(|| "0".into(), |m| m.to_string()));
        }
        r.rows.push(row);
        r.pretty.push(format!("n {display_n}: length {length}"));
    }
    r.pretty.push(match report.n0 {
        Some(rank) if report.stabilized => format!("stabilized from n {}", rank + offset),
        _ => "not stabilized within the window".into(),
    });

    let params = vec![
        ("family", family_name(fam).to_string()),
        ("a", a.to_string()),
        ("b", b.to_string()),
        ("c", c.to_string()),
        ("k", k.to_string()),
        ("n", format!("{lo}..{hi}")),
    ];
    Ok((params, r))
}

fn finite_type_cmd(
    chain: &str,
    h: &str,
    e: Option<&str>,
    t: usize,
    ctx: &Ctx,
) -> Result<Outcome> {
    let spec: ChainSpec = chain.parse()?;
    let base = parse_weight(h)?;
    let seeds: Vec<Weight> = match e {
        Some(s) => s
            .split(';')
            .filter(|part| !part.trim().is_empty())
            .map(parse_weight)
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let report = finite_type_probe(&spec, &base.0, &seeds, t, &ctx.caps)?;

    let level_values: Vec<Value> = report
        .levels
        .iter()
        .map(|level| {
            let shape = match level.shape {
                Some((a, b, c)) => Value::from(vec![a as u64, b as u64, c as u64]),
                None => Value::Null,
            };
            json!({
                "index": level.index,
                "rank": level.rank,
                "analyzed": level.analyzed,
                "shape": shape,
                "lengths": level.lengths.clone(),
            })
        })
        .collect();
    let result = json!({
        "chain": spec.to_string(),
        "t_max": report.t_max,
        "levels": level_values,
        "bounded_per_t": report.bounded_per_t.clone(),
        "finite_type": report.finite_type,
    });

    let mut r = Rendered::new(result);
    r.columns = vec!["level".into(), "rank".into(), "analyzed".into()];
    for deg in 0..=report.t_max {
        r.columns.push(format!("t{deg}"));
    }
    for level in &report.levels {
        let mut row = vec![
            level.index.to_string(),
            level.rank.to_string(),
            level.analyzed.to_string(),
        ];
        if level.analyzed {
            for len in &level.lengths {
                row.push(len.to_string());
            }
            let shown = level
                .lengths
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            r.pretty.push(format!(
                "level {} (rank {}): lengths {shown}",
                level.index, level.rank
            ));
        } else {
            for _ in 0..=report.t_max {
                row.push("-".into());
            }
            r.pretty.push(format!(
                "level {} (rank {}): skipped, seeds do not fit",
                level.index, level.rank
            ));
        }
        r.rows.push(row);
    }
    let bounded = report
        .bounded_per_t
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    r.pretty.push(format!("bounded per degree: {bounded}"));
    r.pretty.push(format!("finite type: {}", report.finite_type));

    let mut params = vec![("chain", spec.to_string()), ("h", base.to_string())];
    if !seeds.is_empty() {
        let echo = seeds
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(";");
        params.push(("e", echo));
    }
    params.push(("t", t.to_string()));
    Ok((params, r))
}

fn verify_cmd(suite: &str, ctx: &Ctx) -> Result<Outcome> {
    let suites: Vec<(&'static str, Vec<CheckReport>)> = if suite == "all" {
        run_all(ctx.seed, &ctx.caps)?
    } else {
        let reports = run_suite(suite, ctx.seed, &ctx.caps)?;
        let name = SUITE_NAMES
            .iter()
            .find(|n| **n == suite)
            .copied()
            .unwrap_or("suite");
        vec![(name, reports)]
    };

    let mut passed = true;
    let mut suite_values = Vec::new();
    let mut r = Rendered::new(Value::Null);
    r.columns = vec![
        "suite".into(),
        "property".into(),
        "cases".into(),
        "failures".into(),
    ];
    for (name, reports) in &suites {
        let mut property_values = Vec::new();
        for report in reports {
            passed &= report.passed();
            property_values.push(json!({
                "name": report.name,
                "cases": report.cases,
                "failures": report.failures.clone(),
            }));
            r.rows.push(vec![
                name.to_string(),
                report.name.to_string(),
                report.cases.to_string(),
                report.failures.len().to_string(),
            ]);
            if report.passed() {
                r.pretty.push(format!("{name}/{}: {} cases, ok", report.name, report.cases));
            } else {
                r.pretty.push(format!(
                    "{name}/{}: {} cases, {} FAILED",
                    report.name,
                    report.cases,
                    report.failures.len()
                ));
                for failure in &report.failures {
                    r.pretty.push(format!("  {failure}"));
                }
            }
        }
        suite_values.push(json!({ "suite": name, "properties": property_values }));
    }
    r.pretty.push(if passed { "all checks passed".into() } else { "FAILURES".into() });
    r.result = json!({ "passed": passed, "suites": suite_values });
    r.failed = !passed;

    let echo = if suite == "all" { "all".to_string() } else { suites[0].0.to_string() };
    Ok((vec![("suite", echo)], r))
}
