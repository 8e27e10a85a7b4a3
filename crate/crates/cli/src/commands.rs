use anyhow::{anyhow, Result};
use clap::{Args, ValueEnum};
use freeprob::cumulants::{
    bercovici_pata, cumulants_from_moments, moments_from_cumulants, BpDirection, CumulantSequence, Flavor,
    MomentSequence,
};
use freeprob::exactcount as ec;
use freeprob::graphs::{
    ade_graph, circular_even_moments, claimed_circular_measure, poincare, theta_from_poincare, AdeName,
    RootedBipartiteGraph,
};
use freeprob::laws::{law_atoms, law_density, law_moment, law_moments, law_support, LawSpec, MomentArg};
use freeprob::partitions::{count, enumerate, Category, ColoredWord, Modulus};
use freeprob::scalar::{fmt_rational, int, parse_rational};
use freeprob::transforms::{
    cauchy_from_moments, classical_convolution, free_additive_convolution, free_multiplicative_convolution, linspace,
    r_from_moments, s_from_moments, stieltjes_invert, ClosedCauchy, DensityGrid, PadeCauchy,
};
use freeprob::weingarten::{integrate_monomial, weingarten, EasyGroup};
use freeprob::{Rational, Scalar};
use freeprob_randmat as rm;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{max_k, usage, Cli, Command, Common, Report};

fn fr(r: &Rational) -> String {
    fmt_rational(r)
}

fn frs(v: &[Rational]) -> Vec<String> {
    v.iter().map(fr).collect()
}

fn rational(s: &str, what: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| usage(format!("{what}: cannot parse {s:?} as a rational")))
}

fn t_param(c: &Common) -> Result<Rational> {
    c.t.as_deref().map_or(Ok(int(1)), |s| rational(s, "--t"))
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("{flag} is required")))
}

fn check_k(k: usize) -> Result<()> {
    let cap = max_k();
    if k > cap {
        return Err(anyhow!("size {k} exceeds FREEPROB_MAX_K = {cap}"));
    }
    Ok(())
}

fn list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| rational(x, "list entry")).collect()
}

/// `name(arg, …)`, or a bare name taking `--t`, `--s`, `--N`.
pub fn parse_law(expr: &str, c: &Common) -> Result<LawSpec> {
    let expr = expr.trim();
    let (name, args): (String, Vec<String>) = match expr.split_once('(') {
        Some((n, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| usage(format!("unbalanced law {expr:?}")))?;
            (n.trim().to_lowercase(), inner.split(',').map(|a| a.trim().to_string()).collect())
        }
        None => (expr.to_lowercase(), Vec::new()),
    };
    let name = name.replace('-', "_");
    let arg = |i: usize, flag: &Option<String>, fallback: &str| -> String {
        args.get(i).cloned().or_else(|| flag.clone()).unwrap_or_else(|| fallback.to_string())
    };
    let one = |flag: &Option<String>| rational(&arg(0, flag, "1"), &name);
    let two_s = || arg(0, &c.s, "2");
    let two_t = || rational(&arg(1, &c.t, "1"), &name);
    let law = match name.as_str() {
        "point" | "dirac" => LawSpec::PointMass(one(&c.t)?),
        "gaussian" | "normal" => LawSpec::Gaussian(one(&c.t)?),
        "complex_gaussian" => LawSpec::ComplexGaussian(one(&c.t)?),
        "poisson" => LawSpec::Poisson(one(&c.t)?),
        "semicircle" => LawSpec::Semicircle(one(&c.t)?),
        "mp" | "marchenko_pastur" | "free_poisson" => LawSpec::MarchenkoPastur(one(&c.t)?),
        "circular" => LawSpec::Circular(one(&c.t)?),
        "bessel" => LawSpec::Bessel(Modulus::parse(&two_s())?, two_t()?),
        "free_bessel" => LawSpec::FreeBessel(Modulus::parse(&two_s())?, two_t()?),
        "free_bessel_power" => LawSpec::FreeBesselPower(rational(&two_s(), &name)?, two_t()?),
        "free_hyperspherical" => {
            let n = match args.first() {
                Some(a) => a.parse().map_err(|_| usage(format!("bad N {a:?}")))?,
                None => require(c.n, "--N")?,
            };
            LawSpec::FreeHyperspherical(n)
        }
        _ => return Err(usage(format!("unknown law {name:?}"))),
    };
    law.validate()?;
    Ok(law)
}

/// A comma-separated moment list, or a law expression.
fn moment_source(expr: &str, order: usize, c: &Common) -> Result<MomentSequence<Rational>> {
    let e = expr.trim();
    if e.starts_with(|ch: char| ch.is_ascii_digit() || ch == '-' || ch == '+' || ch == '.') {
        return Ok(MomentSequence::new(list(e)?));
    }
    Ok(law_moments(&parse_law(e, c)?, order)?)
}

fn group(c: &Common) -> Result<EasyGroup> {
    Ok(EasyGroup::parse(c.group.as_deref().unwrap_or("O"), c.free)?)
}

pub fn dispatch(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    match &cli.command {
        Command::Partitions(a) => partitions(a, c),
        Command::Numbers(a) => numbers(a, c),
        Command::Cumulants(a) => cumulants(a),
        Command::Convolve(a) => convolve(a, c),
        Command::Transform(a) => transform(a, c),
        Command::Law(a) => law(a, c),
        Command::Weingarten(a) => weingarten_cmd(a, c),
        Command::Integrate(a) => integrate(a, c),
        Command::Simulate(a) => simulate(a, c),
        Command::Graph(a) => graph(a, c),
        Command::Verify(a) => verify(a, c),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct PartitionsArgs {
    /// P, P2, Peven, P12, Ps(s), NC, NC2, NCeven, NC12, NCs(s), MatchP2, MatchNC2, MatchPeven, MatchNCeven.
    #[arg(long, default_value = "P")]
    pub cat: String,
    /// Color word in o/b letters; its length replaces --k.
    #[arg(long)]
    pub colors: Option<String>,
    /// Print only the number of partitions.
    #[arg(long)]
    pub count: bool,
}

fn partitions(a: &PartitionsArgs, c: &Common) -> Result<Report> {
    let cat = Category::parse(&a.cat).map_err(|e| usage(e.to_string()))?;
    let word = match &a.colors {
        Some(w) => ColoredWord::parse(w).map_err(|e| usage(e.to_string()))?,
        None => ColoredWord::uncolored(require(c.k, "--k or --colors")?),
    };
    check_k(word.len())?;
    if a.count {
        let n = count(cat, &word)?;
        let result = json!({ "category": cat.to_string(), "word": word.to_string(), "count": n.to_string() });
        return Ok(Report::with_table(result, vec!["category", "word", "count"], vec![vec![
            cat.to_string(),
            word.to_string(),
            n.to_string(),
        ]]));
    }
    let ps = enumerate(cat, &word)?;
    let rows = ps
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let labels: Vec<String> = p.labels().iter().map(|l| l.to_string()).collect();
            vec![i.to_string(), p.block_count().to_string(), labels.join(" ")]
        })
        .collect();
    let result = json!({
        "category": cat.to_string(),
        "word": word.to_string(),
        "count": ps.len().to_string(),
        "partitions": ps,
    });
    Ok(Report::with_table(result, vec!["index", "blocks", "labels"], rows))
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumberKind {
    Poker,
    Catalan,
    Bell,
    Stirling,
    FussCatalan,
    FussNarayana,
    Derangements,
    Sphere,
}

#[derive(Args, Debug, Serialize)]
pub struct NumbersArgs {
    #[arg(value_enum)]
    pub kind: NumberKind,
}

fn numbers(a: &NumbersArgs, c: &Common) -> Result<Report> {
    let seq = |f: &dyn Fn(usize) -> String, k: usize| -> Report {
        let vals: Vec<String> = (0..=k).map(f).collect();
        let rows = vals.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.clone()]).collect();
        Report::with_table(json!(vals), vec!["k", "value"], rows)
    };
    Ok(match a.kind {
        NumberKind::Poker => {
            let probs = ec::poker_probabilities();
            let counts = ec::poker_counts();
            let map: serde_json::Map<String, Value> = probs.iter().map(|(k, v)| (k.to_string(), json!(fr(v)))).collect();
            let rows = probs.iter().map(|(k, v)| vec![k.to_string(), counts[k].to_string(), fr(v)]).collect();
            Report::with_table(Value::Object(map), vec!["hand", "count", "probability"], rows)
        }
        NumberKind::Catalan => seq(&|k| ec::catalan(k).to_string(), require(c.k, "--k")?),
        NumberKind::Bell => seq(&|k| ec::bell(k).to_string(), require(c.k, "--k")?),
        NumberKind::Stirling => {
            let r = require(c.k, "--k")?;
            seq(&|b| ec::stirling2(r, b).to_string(), r)
        }
        NumberKind::FussCatalan => {
            let s = rational(c.s.as_deref().unwrap_or("1"), "--s")?;
            seq(&|k| fr(&ec::fuss_catalan(&s, k)), require(c.k, "--k")?)
        }
        NumberKind::FussNarayana => {
            let s = rational(c.s.as_deref().unwrap_or("1"), "--s")?;
            let k = require(c.k, "--k")?;
            let t = t_param(c)?;
            let coeffs = ec::fuss_narayana_coeffs(&s, k);
            let value = ec::fuss_narayana(&s, k, &t);
            let rows = coeffs.iter().enumerate().map(|(b, v)| vec![(b + 1).to_string(), fr(v)]).collect();
            Report::with_table(json!({ "value": fr(&value), "coefficients": frs(&coeffs) }), vec!["b", "coefficient"], rows)
        }
        NumberKind::Derangements => {
            let n = require(c.n, "--N")?;
            let r = c.k.unwrap_or(n as usize) as u64;
            if r > n {
                return Err(usage("--k must not exceed --N"));
            }
            let p = ec::derangement_profile(n, r);
            let d = ec::derangements(n);
            Report::with_table(
                json!({ "derangements": d.to_string(), "profile": fr(&p), "profile_float": p.as_f64() }),
                vec!["N", "k", "derangements", "profile"],
                vec![vec![n.to_string(), r.to_string(), d.to_string(), fr(&p)]],
            )
        }
        NumberKind::Sphere => {
            let n = require(c.n, "--N")?;
            let (ratio, pow) = ec::sphere_volume_ratio(n);
            Report::with_table(
                json!({ "ratio": fr(&ratio), "pi_power": pow, "volume": ec::sphere_volume(n) }),
                vec!["N", "ratio", "pi_power", "volume"],
                vec![vec![n.to_string(), fr(&ratio), pow.to_string(), ec::sphere_volume(n).to_string()]],
            )
        }
    })
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlavorArg {
    Classical,
    Free,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Classical => Flavor::Classical,
            FlavorArg::Free => Flavor::Free,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BpArg {
    ClassicalToFree,
    FreeToClassical,
}

#[derive(Args, Debug, Serialize)]
pub struct CumulantsArgs {
    /// Comma-separated moments M_1, M_2, ...
    #[arg(long, conflicts_with = "cumulants")]
    pub moments: Option<String>,
    /// Comma-separated cumulants, converted to moments.
    #[arg(long)]
    pub cumulants: Option<String>,
    #[arg(long, value_enum, default_value_t = FlavorArg::Free)]
    pub flavor: FlavorArg,
    /// Also apply the Bercovici-Pata map to the moments.
    #[arg(long, value_enum)]
    pub bp: Option<BpArg>,
}

fn cumulants(a: &CumulantsArgs) -> Result<Report> {
    let flavor: Flavor = a.flavor.into();
    let (m, k) = match (&a.moments, &a.cumulants) {
        (Some(m), None) => {
            let m = MomentSequence::new(list(m)?);
            let k = cumulants_from_moments(&m, flavor);
            (m, k)
        }
        (None, Some(k)) => {
            let k = CumulantSequence::new(list(k)?, flavor);
            (moments_from_cumulants(&k), k)
        }
        _ => return Err(usage("give exactly one of --moments and --cumulants")),
    };
    let mut result = json!({
        "flavor": format!("{flavor:?}").to_lowercase(),
        "moments": frs(&m.values),
        "cumulants": frs(&k.values),
    });
    let bp = a.bp.map(|d| {
        let dir = match d {
            BpArg::ClassicalToFree => BpDirection::ClassicalToFree,
            BpArg::FreeToClassical => BpDirection::FreeToClassical,
        };
        bercovici_pata(&m, dir)
    });
    if let Some(b) = &bp {
        result["bercovici_pata"] = json!(frs(&b.values));
    }
    let rows = (0..m.values.len())
        .map(|i| {
            let mut r = vec![(i + 1).to_string(), fr(&m.values[i]), fr(&k.values[i])];
            r.push(bp.as_ref().map_or(String::new(), |b| fr(&b.values[i])));
            r
        })
        .collect();
    Ok(Report::with_table(result, vec!["n", "moment", "cumulant", "bercovici_pata"], rows))
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvolveOp {
    FreeAdd,
    ClassicalAdd,
    FreeMult,
}

#[derive(Args, Debug, Serialize)]
pub struct ConvolveArgs {
    #[arg(value_enum)]
    pub op: ConvolveOp,
    /// Moment list or law, e.g. "semicircle(1/2)".
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

fn convolve(a: &ConvolveArgs, c: &Common) -> Result<Report> {
    let order = c.order.unwrap_or(8);
    let x = moment_source(&a.a, order, c)?;
    let y = moment_source(&a.b, order, c)?;
    let z = match a.op {
        ConvolveOp::FreeAdd => free_additive_convolution(&x, &y)?,
        ConvolveOp::ClassicalAdd => classical_convolution(&x, &y)?,
        ConvolveOp::FreeMult => free_multiplicative_convolution(&x, &y)?,
    };
    let rows = z.values.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), fr(v)]).collect();
    Ok(Report::with_table(json!({ "moments": frs(&z.values) }), vec!["n", "moment"], rows))
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Cauchy,
    R,
    S,
    Density,
}

#[derive(Args, Debug, Serialize)]
pub struct TransformArgs {
    #[arg(value_enum)]
    pub kind: TransformKind,
    /// Moment list or law, e.g. "mp(1/2)".
    #[arg(long)]
    pub law: String,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
}

fn grid_report(d: &DensityGrid) -> Report {
    let rows = d.points.iter().zip(&d.densities).map(|(x, y)| vec![x.to_string(), y.to_string()]).collect();
    Report::with_table(
        json!({ "points": d.points, "densities": d.densities, "atoms": d.atoms, "mass_defect": d.mass_defect }),
        vec!["x", "density"],
        rows,
    )
}

fn transform(a: &TransformArgs, c: &Common) -> Result<Report> {
    if a.kind == TransformKind::Density {
        if a.points < 2 || a.from >= a.to {
            return Err(usage("need --from < --to and --points >= 2"));
        }
        let grid = linspace(a.from, a.to, a.points);
        let closed = parse_law(&a.law, c).ok().and_then(|l| match l {
            LawSpec::Semicircle(t) => Some(ClosedCauchy::Semicircle { t: t.as_f64() }),
            LawSpec::MarchenkoPastur(t) => Some(ClosedCauchy::MarchenkoPastur { t: t.as_f64() }),
            LawSpec::PointMass(x) => Some(ClosedCauchy::PointMass { c: x.as_f64() }),
            _ => None,
        });
        let d = match closed {
            Some(g) => stieltjes_invert(&g, &grid, a.eps)?,
            None => {
                let m = moment_source(&a.law, c.order.unwrap_or(16), c)?;
                stieltjes_invert(&PadeCauchy::from_moments(&m)?, &grid, a.eps)?
            }
        };
        return Ok(grid_report(&d));
    }
    let m = moment_source(&a.law, c.order.unwrap_or(10), c)?;
    let series = match a.kind {
        TransformKind::Cauchy => cauchy_from_moments(&m),
        TransformKind::R => r_from_moments(&m)?,
        TransformKind::S => s_from_moments(&m)?,
        TransformKind::Density => unreachable!(),
    };
    let coeffs = frs(series.coeffs());
    let rows = coeffs.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.clone()]).collect();
    Ok(Report::with_table(json!({ "coefficients": coeffs }), vec!["power", "coefficient"], rows))
}

#[derive(Args, Debug, Serialize)]
pub struct LawArgs {
    /// Law name or expression: semicircle, mp(1/2), bessel(2,1), ...
    pub name: String,
    /// Colored word for a single moment.
    #[arg(long)]
    pub word: Option<String>,
    /// Comma-separated points at which to evaluate the density.
    #[arg(long, allow_hyphen_values = true)]
    pub density: Option<String>,
}

fn law(a: &LawArgs, c: &Common) -> Result<Report> {
    let law = parse_law(&a.name, c)?;
    let mut result = json!({ "law": law.name() });
    if let Some(w) = &a.word {
        let word = ColoredWord::parse(w).map_err(|e| usage(e.to_string()))?;
        check_k(word.len())?;
        let v = law_moment(&law, &MomentArg::Word(word))?;
        result["word"] = json!(w);
        result["moment"] = json!(fr(&v));
        return Ok(Report::with_table(result, vec!["word", "moment"], vec![vec![w.clone(), fr(&v)]]));
    }
    let order = c.order.unwrap_or(8);
    let m = law_moments(&law, order)?;
    result["moments"] = json!(frs(&m.values));
    if let Some((lo, hi)) = law_support(&law) {
        result["support"] = json!([lo, hi]);
    }
    if let Ok(atoms) = law_atoms(&law) {
        let list: Vec<Value> = atoms.atoms.iter().map(|(z, w)| json!({ "re": z.re, "im": z.im, "mass": w })).collect();
        result["atoms"] = json!(list);
    }
    if let Some(xs) = &a.density {
        let xs: Vec<f64> = xs
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| usage(format!("bad density point {x:?}"))))
            .collect::<Result<_>>()?;
        let ds = xs.iter().map(|&x| law_density(&law, x)).collect::<freeprob::Result<Vec<_>>>()?;
        result["density"] = json!(xs.iter().zip(&ds).map(|(x, d)| json!([x, d])).collect::<Vec<_>>());
    }
    let rows = m.values.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), fr(v)]).collect();
    Ok(Report::with_table(result, vec!["k", "moment"], rows))
}

#[derive(Args, Debug, Serialize)]
pub struct WeingartenArgs {
    /// Color word; defaults to the uncolored word of length --k.
    #[arg(long)]
    pub colors: Option<String>,
}

fn weingarten_cmd(a: &WeingartenArgs, c: &Common) -> Result<Report> {
    let g = group(c).map_err(|e| usage(e.to_string()))?;
    let n = require(c.n, "--N")?;
    let word = match &a.colors {
        Some(w) => ColoredWord::parse(w).map_err(|e| usage(e.to_string()))?,
        None => ColoredWord::uncolored(require(c.k, "--k")?),
    };
    check_k(word.len())?;
    let t = weingarten(g, &word, n)?;
    let mat = |m: &freeprob::ExactMatrix| -> Vec<Vec<String>> { m.to_rows().iter().map(|r| frs(r)).collect() };
    let mut rows = Vec::new();
    for i in 0..t.partitions.len() {
        for j in 0..t.partitions.len() {
            rows.push(vec![
                i.to_string(),
                j.to_string(),
                fr(&t.gram[(i, j)]),
                fr(&t.wg[(i, j)]),
            ]);
        }
    }
    let result = json!({
        "group": g.to_string(),
        "word": word.to_string(),
        "N": n,
        "partitions": t.partitions,
        "gram": mat(&t.gram),
        "weingarten": mat(&t.wg),
    });
    Ok(Report::with_table(result, vec!["row", "col", "gram", "weingarten"], rows))
}

#[derive(Args, Debug, Serialize)]
pub struct IntegrateArgs {
    /// Product of coordinates u[i,j], each optionally followed by * for the conjugate.
    pub monomial: String,
}

/// Parses `u[1,1]u[1,2]*` into 1-based rows, columns and colors.
pub fn parse_monomial(s: &str) -> Result<(Vec<usize>, Vec<usize>, ColoredWord)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (mut rows, mut cols, mut colors) = (Vec::new(), Vec::new(), String::new());
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("u[")
            .or_else(|| rest.strip_prefix("g["))
            .ok_or_else(|| usage(format!("expected u[i,j] at {rest:?}")))?;
        let close = body.find(']').ok_or_else(|| usage("missing ]"))?;
        let (i, j) = body[..close].split_once(',').ok_or_else(|| usage("expected u[i,j]"))?;
        rows.push(i.parse().map_err(|_| usage(format!("bad index {i:?}")))?);
        cols.push(j.parse().map_err(|_| usage(format!("bad index {j:?}")))?);
        rest = &body[close + 1..];
        if let Some(r) = rest.strip_prefix('*') {
            colors.push('b');
            rest = r;
        } else {
            colors.push('o');
        }
    }
    if rows.is_empty() {
        return Err(usage("empty monomial"));
    }
    Ok((rows, cols, ColoredWord::parse(&colors)?))
}

fn integrate(a: &IntegrateArgs, c: &Common) -> Result<Report> {
    let g = group(c).map_err(|e| usage(e.to_string()))?;
    let n = require(c.n, "--N")?;
    let (rows, cols, word) = parse_monomial(&a.monomial)?;
    check_k(word.len())?;
    let v = integrate_monomial(g, n, &rows, &cols, &word)?;
    Ok(Report::with_table(
        json!({ "group": g.to_string(), "N": n, "value": fr(&v), "float": v.as_f64() }),
        vec!["group", "N", "value"],
        vec![vec![g.to_string(), n.to_string(), fr(&v)]],
    ))
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    Wigner,
    Gaussian,
    Wishart,
    Block,
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub ensemble: EnsembleArg,
    /// Wishart column count.
    #[arg(long = "M")]
    pub big_m: Option<usize>,
    /// Block-Wishart outer size d.
    #[arg(long)]
    pub d: Option<usize>,
    /// Block-Wishart block size n.
    #[arg(long = "n")]
    pub small_n: Option<usize>,
    /// Block-Wishart ratio m.
    #[arg(long = "m")]
    pub small_m: Option<usize>,
    /// identity, transpose, trace_one or diagonal.
    #[arg(long, default_value = "transpose")]
    pub map: String,
    /// Normalization of YY*: raw, d or dm.
    #[arg(long, default_value = "d")]
    pub scale: String,
    /// Trial indices a..b (end exclusive); defaults to 0..--trials.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Moments of orders 1..=k.
    #[arg(long)]
    pub moments: Option<usize>,
    /// Colored word in (Z, Z*).
    #[arg(long)]
    pub word: Option<String>,
    /// Pooled eigenvalue histogram.
    #[arg(long)]
    pub histogram: bool,
    /// Histogram bin width.
    #[arg(long, default_value_t = 0.1)]
    pub bins: f64,
}

fn trial_list(a: &SimulateArgs, c: &Common) -> Result<Vec<u64>> {
    if let Some(r) = &a.seeds {
        let (lo, hi) = r.split_once("..").ok_or_else(|| usage("--seeds expects a..b"))?;
        let lo: u64 = lo.trim().parse().map_err(|_| usage("bad --seeds start"))?;
        let hi: u64 = hi.trim().parse().map_err(|_| usage("bad --seeds end"))?;
        if hi <= lo {
            return Err(usage("--seeds range is empty"));
        }
        return Ok((lo..hi).collect());
    }
    Ok((0..c.trials.unwrap_or(10) as u64).collect())
}

fn simulate(a: &SimulateArgs, c: &Common) -> Result<Report> {
    let t = t_param(c)?.as_f64();
    let spec = match a.ensemble {
        EnsembleArg::Wigner => rm::EnsembleSpec::Wigner { n: require(c.n, "--N")? as usize, t },
        EnsembleArg::Gaussian => rm::EnsembleSpec::ComplexGaussian { n: require(c.n, "--N")? as usize, t },
        EnsembleArg::Wishart => rm::EnsembleSpec::Wishart { n: require(c.n, "--N")? as usize, m: require(a.big_m, "--M")? },
        EnsembleArg::Block => rm::EnsembleSpec::BlockWishart {
            d: require(a.d, "--d")?,
            n: require(a.small_n, "--n")?,
            m: require(a.small_m, "--m")?,
            map: rm::BlockMap::parse(&a.map).map_err(|e| usage(e.to_string()))?,
            scale: rm::BlockScale::parse(&a.scale).map_err(|e| usage(e.to_string()))?,
        },
    };
    let trials = trial_list(a, c)?;
    let modes = usize::from(a.histogram) + usize::from(a.moments.is_some()) + usize::from(a.word.is_some());
    if modes != 1 {
        return Err(usage("choose exactly one of --moments, --word and --histogram"));
    }
    if a.histogram {
        let s = rm::spectrum_sample(&spec, c.seed, &trials)?;
        let mut r = grid_report(&s.histogram(a.bins)?);
        r.result["trials"] = json!(s.trials);
        r.result["mean"] = json!(s.mean());
        return Ok(r);
    }
    let req = match (&a.moments, &a.word) {
        (Some(k), _) => rm::MomentRequest::Orders(*k),
        (_, Some(w)) => rm::MomentRequest::Word(ColoredWord::parse(w).map_err(|e| usage(e.to_string()))?),
        _ => unreachable!(),
    };
    let est = rm::empirical_moments(&spec, c.seed, &trials, &req)?;
    let rows = est
        .values
        .iter()
        .zip(&est.stderr)
        .enumerate()
        .map(|(i, (v, e))| vec![(i + 1).to_string(), v.to_string(), e.to_string()])
        .collect();
    Ok(Report::with_table(
        json!({ "ensemble": spec, "rescaling": spec.rescaling(), "moments": est.values, "stderr": est.stderr, "trials": est.trials }),
        vec!["k", "moment", "stderr"],
        rows,
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct GraphArgs {
    /// ADE name: A5, D6, A~4, D~5, E6, E7~, Ainf(8), ...
    pub name: Option<String>,
    /// Graph file in the {"parts", "edges", "root"} JSON layout.
    #[arg(long)]
    pub json: Option<std::path::PathBuf>,
}

fn graph(a: &GraphArgs, c: &Common) -> Result<Report> {
    let order = c.order.unwrap_or(10);
    let (label, g, name): (String, RootedBipartiteGraph, Option<AdeName>) = match (&a.name, &a.json) {
        (Some(n), None) => {
            let name = AdeName::parse(n).map_err(|e| usage(e.to_string()))?;
            (name.to_string(), ade_graph(name)?, Some(name))
        }
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)?;
            (p.display().to_string(), serde_json::from_str(&text)?, None)
        }
        _ => return Err(usage("give a graph name or --json")),
    };
    let loops = poincare(&g, order);
    let theta = theta_from_poincare(&loops, order)?;
    let eps = circular_even_moments(&g, order)?;
    let claimed = name
        .and_then(claimed_circular_measure)
        .map(|m| m.even_moments(order) == eps);
    let rows = (0..=order)
        .map(|i| vec![i.to_string(), loops[i].to_string(), theta[i].to_string(), fr(&eps[i])])
        .collect();
    Ok(Report::with_table(
        json!({
            "graph": label,
            "vertices": g.vertex_count(),
            "poincare": loops.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "theta": theta.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "circular_even_moments": frs(&eps),
            "claimed_measure_matches": claimed,
        }),
        vec!["n", "loops", "theta", "circular_moment"],
        rows,
    ))
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Montecarlo,
    All,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn verify(a: &VerifyArgs, c: &Common) -> Result<Report> {
    let ids = crate::verify::suite_ids(a.suite);
    let outcomes = crate::verify::run_criteria(&ids, c.seed);
    let failed = outcomes.iter().any(|o| !o.passed);
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                csv_field(&o.name),
                if o.passed { "PASS" } else { "FAIL" }.to_string(),
                format!("{:.3}", o.elapsed.as_secs_f64()),
                csv_field(&o.detail),
            ]
        })
        .collect();
    let mut r = Report::with_table(
        json!({ "passed": !failed, "criteria": outcomes }),
        vec!["id", "name", "status", "seconds", "detail"],
        rows,
    );
    r.failed = failed;
    Ok(r)
}
