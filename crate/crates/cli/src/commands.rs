//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use fracbound_core::counting::{self, CountingBound, Graph};
use fracbound_core::detineq::{self, LogDet};
use fracbound_core::entropy::{self, EntropySetFunction, JointDistribution};
use fracbound_core::hypergraph::{Hypergraph, Weighting};
use fracbound_core::lp;
use fracbound_core::rational::{self, Rational};
use fracbound_core::relent;
use fracbound_core::setfn::{self, GroundOrder, SetFunction, Violation};
use fracbound_core::Subset;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::formats::{self, DistributionFile, GraphFile, MatrixFile, PairFile, TensorizationFile};
use crate::report::{InputLog, Report, TOLERANCE};
use crate::spec::{parse_indices, CollectionSpec, Side, WeightingSpec};
use crate::{BoundsArgs, CheckArgs, CountArgs, DetineqArgs, Form, LogBase, LpCoverArgs, Sides};

fn scale(base: LogBase) -> f64 {
    match base {
        LogBase::E => 1.0,
        LogBase::Two => 1.0 / std::f64::consts::LN_2,
    }
}

fn unit_name(base: LogBase) -> &'static str {
    match base {
        LogBase::E => "nats",
        LogBase::Two => "bits",
    }
}

fn weights_json(w: &Weighting) -> Value {
    w.values().iter().map(rational::format).collect()
}

fn order_json(o: &GroundOrder) -> Value {
    o.sequence().iter().map(|i| i + 1).collect()
}

fn distribution(path: &Path, log: &mut InputLog) -> CliResult<JointDistribution> {
    let (file, bytes): (DistributionFile, _) = formats::load(path)?;
    log.record(path, &bytes);
    file.build()
}

pub fn bounds(a: &BoundsArgs, base: LogBase) -> CliResult<Report> {
    let mut log = InputLog::default();
    let p = distribution(&a.distribution, &mut log)?;
    let n = p.n();
    let h = a.collection.resolve(n, &mut log)?;
    let order = a.order.resolve(n)?;
    let e = EntropySetFunction::new(&p)?;
    let k = scale(base);
    let exact = e.value(Subset::full(n)) * k;

    let mut report = Report::new(format!("bounds --form {:?}", a.form).to_lowercase());
    report.value("units", unit_name(base)).value("exact", exact);
    let want_lower = a.side != Sides::Upper;
    let want_upper = a.side != Sides::Lower;
    let form = format!("{:?}", a.form).to_lowercase();
    let provenance = |w: &Weighting| json!({"form": form, "weighting": weights_json(w), "order": order_json(&order)});

    let (lower, upper) = if a.form == Form::Degree {
        let r = setfn::degree_form_bounds(&e, &h, &order)?;
        (Some((r.lower, r.lower_weighting)), Some((r.upper, r.upper_weighting)))
    } else {
        let mut lower = None;
        let mut upper = None;
        if want_lower {
            let w = a.weighting.resolve(&h, Side::Lower, &mut log)?;
            let v = match a.form {
                Form::Strong => setfn::strong_lower_bound(&e, &h, &w, &order)?,
                _ => setfn::weak_lower_bound(&e, &h, &w)?,
            };
            lower = Some((v, w));
        }
        if want_upper {
            let w = a.weighting.resolve(&h, Side::Upper, &mut log)?;
            let v = match a.form {
                Form::Strong => setfn::strong_upper_bound(&e, &h, &w, &order)?,
                _ => setfn::weak_upper_bound(&e, &h, &w)?,
            };
            upper = Some((v, w));
        }
        (lower, upper)
    };
    if let Some((v, w)) = lower.filter(|_| want_lower) {
        let v = v * k;
        report.value_with("lower", v, provenance(&w)).value("gap_lower", exact - v);
        report.assert_slack("lower <= exact", exact - v);
    }
    if let Some((v, w)) = upper.filter(|_| want_upper) {
        let v = v * k;
        report.value_with("upper", v, provenance(&w)).value("gap_upper", v - exact);
        report.assert_slack("exact <= upper", v - exact);
    }
    Ok(report.seal(log))
}

pub fn lp_cover(a: &LpCoverArgs) -> CliResult<Report> {
    let mut log = InputLog::default();
    let h = match (&a.hypergraph, &a.collection, a.n) {
        (Some(path), None, _) => {
            let (file, bytes): (formats::HypergraphFile, _) = formats::load(path)?;
            log.record(path, &bytes);
            file.build()?
        }
        (None, Some(spec), Some(n)) => spec.resolve(n, &mut log)?,
        _ => return Err(CliError::Parse("give a hypergraph file or --collection with --n".into())),
    };
    let costs: Vec<Rational> = match &a.costs {
        None => vec![rational::one(); h.len()],
        Some(text) => text
            .split(',')
            .map(|t| rational::parse(t.trim()).ok_or_else(|| CliError::Parse(format!("bad cost {t:?}"))))
            .collect::<CliResult<_>>()?,
    };
    let (w, optimum) = lp::optimal_fractional_covering(&h, &costs)?;
    let mut report = Report::new("lp-cover");
    report
        .value("optimum", rational::format(&optimum))
        .value("weighting", weights_json(&w))
        .value("weight", rational::format(&w.total_weight()));
    report.assert_flag("optimum is a fractional covering", h.classify(&w)?.is_covering());
    if a.costs.is_none() {
        // unit-cost covering number equals the packing number of the transpose
        let (_, dual) = lp::optimal_fractional_packing(&h.transpose()?, &vec![rational::one(); h.n()])?;
        report.value("dual_optimum", rational::format(&dual));
        report.assert_flag("primal and dual optima agree", dual == optimum);
    }
    Ok(report.seal(log))
}

fn bound_json(b: &CountingBound) -> Value {
    json!({
        "isolated_vertices": b.isolated,
        "factors": b.factors.iter().map(|f| json!({
            "vertex": f.vertex, "p": f.p, "degree": f.degree, "homs": f.homs.to_string()
        })).collect::<Vec<_>>(),
    })
}

fn push_bound(report: &mut Report, name: &str, b: &CountingBound) {
    report.value_with(&format!("{name}_log2"), b.log2, bound_json(b));
    report.value(name, b.value());
}

pub fn count(a: &CountArgs) -> CliResult<Report> {
    let mut log = InputLog::default();
    let (file, bytes): (GraphFile, _) = formats::load(&a.graph)?;
    log.record(&a.graph, &bytes);
    let g = file.build()?;
    let ord = counting::degree_ordering(&g);
    let mut report = Report::new(format!("count --target {}", a.target));
    report
        .value("ordering", ord.order.iter().map(|v| v + 1).collect::<Value>())
        .value("p", ord.order.iter().map(|&v| ord.p[v]).collect::<Value>());

    let (bound, exact): (CountingBound, Option<Box<dyn Fn() -> fracbound_core::Result<u128>>>) = match a.target.split_once(':') {
        None if a.target == "independent-sets" => {
            let gadget = Graph::independent_set_gadget();
            push_bound(&mut report, "exact_form_bound", &counting::hom_bound(&g, &gadget)?);
            let g2 = g.clone();
            (counting::independent_set_bound(&g)?, Some(Box::new(move || counting::independent_sets_exact(&g2))))
        }
        Some(("colorings", r)) => {
            let r: usize = r.parse().map_err(|_| CliError::Parse(format!("bad colour count {r:?}")))?;
            let b = counting::coloring_bound(&g, r)?;
            let g2 = g.clone();
            (b, Some(Box::new(move || counting::hom_count_exact(&g2, &Graph::complete(r)?))))
        }
        Some(("hom", path)) => {
            let (tf, tb): (GraphFile, _) = formats::load(Path::new(path))?;
            log.record(Path::new(path), &tb);
            let f = tf.build()?;
            let b = counting::hom_bound(&g, &f)?;
            let g2 = g.clone();
            (b, Some(Box::new(move || counting::hom_count_exact(&g2, &f))))
        }
        _ => return Err(CliError::Parse(format!("unknown target {:?}", a.target))),
    };
    push_bound(&mut report, "bound", &bound);
    if let Some(ceiling) = counting::regular_independent_ceiling(&g).filter(|_| a.target == "independent-sets") {
        report.value("regular_ceiling_log2", ceiling);
        report.assert_slack("bound <= 2^(n/2 + n/d)", ceiling - bound.log2);
    }
    if a.with_exact {
        let exact = exact.expect("every target has an exact counter")()?;
        report.value("exact", exact.to_string());
        report.value("exact_over_bound", exact as f64 / bound.value());
        let slack = if exact == 0 { f64::INFINITY } else { bound.log2 - (exact as f64).log2() };
        report.assert_slack("exact <= bound (log2)", slack);
    }
    Ok(report.seal(log))
}

pub fn detineq(a: &DetineqArgs) -> CliResult<Report> {
    let mut log = InputLog::default();
    let (file, bytes): (MatrixFile, _) = formats::load(&a.matrix)?;
    log.record(&a.matrix, &bytes);
    let k = file.build()?;
    let n = k.n();
    let h = a.collection.resolve(n, &mut log)?;
    let w = a.weighting.resolve(&h, Side::Upper, &mut log)?;
    let b = detineq::corollary3_bounds(&k, &h, &w)?;
    let mut report = Report::new("detineq");
    report
        .value_with("lower", b.lower(), json!({"weighting": weights_json(&w), "log": b.log_lower}))
        .value("det", b.det())
        .value_with("upper", b.upper(), json!({"weighting": weights_json(&w), "log": b.log_upper}));
    report.assert_slack("lower <= det (log)", b.log_det - b.log_lower);
    report.assert_slack("det <= upper (log)", b.log_upper - b.log_det);
    let had = detineq::hadamard(&k);
    report.value("hadamard_product", had.log_rhs.exp());
    report.assert_slack("det <= prod K_ii (log)", had.slack());
    if let Some(text) = &a.fischer {
        let s = Subset::from_one_based(&parse_indices(text)?, n)?;
        let f = detineq::fischer(&k, s)?;
        report.value("fischer_product", f.log_rhs.exp());
        report.assert_slack(&format!("det <= |K({s})| |K({s}^c)| (log)"), f.slack());
    }
    for level in 1..=n {
        let sz = detineq::szasz(&k, level)?;
        report.assert_slack(&format!("szasz k={level} (log)"), sz.slack());
    }
    Ok(report.seal(log))
}

fn require_input<'a>(a: &'a CheckArgs) -> CliResult<&'a Path> {
    a.input.as_deref().ok_or_else(|| CliError::Parse(format!("check {} needs an input file", a.kind)))
}

fn witness_json<V: Into<Value> + Clone>(v: &Violation<V>) -> Value {
    json!({"s": v.s.to_one_based(), "t": v.t.to_one_based(), "lhs": v.lhs.clone().into(), "rhs": v.rhs.clone().into()})
}

fn submodular_report<F: SetFunction<Value = f64>>(report: &mut Report, f: &F, label: &str) -> CliResult<()> {
    match setfn::is_submodular(f, TOLERANCE, false)? {
        None => {
            report.value(label, true);
            report.assert_flag(label, true);
        }
        Some(v) => {
            report.value_with(label, false, witness_json(&v));
            report.assert_slack(label, v.lhs - v.rhs);
        }
    }
    Ok(())
}

pub fn check(a: &CheckArgs, base: LogBase) -> CliResult<Report> {
    let mut log = InputLog::default();
    let mut report = Report::new(format!("check {}", a.kind));
    let k = scale(base);
    match a.kind.as_str() {
        "submodular:distribution" => {
            let p = distribution(require_input(a)?, &mut log)?;
            submodular_report(&mut report, &EntropySetFunction::new(&p)?, "entropy is submodular")?;
        }
        "submodular:matrix" => {
            let path = require_input(a)?;
            let (file, bytes): (MatrixFile, _) = formats::load(path)?;
            log.record(path, &bytes);
            let m = file.build()?;
            submodular_report(&mut report, &setfn::Tabulated::from_fn(&LogDet(&m))?, "log-det is submodular")?;
        }
        "supermodular:pair" => {
            let path = require_input(a)?;
            let (file, bytes): (PairFile, _) = formats::load(path)?;
            log.record(path, &bytes);
            let pair = file.build()?;
            report.value("divergence", pair.relative_entropy(Subset::full(pair.n())) * k);
            submodular_report(&mut report, &relent::negated_divergence_set_function(&pair)?, "divergence is supermodular")?;
        }
        "prop3" => {
            let c = entropy::proposition3_counterexample();
            let ebar = entropy::ConditionalEntropySetFunction::new(&c.distribution, GroundOrder::natural(4))?;
            report
                .value("H(X4|X1,X2,X3)", c.h4_given_123 * k)
                .value("H(X4|X1,X3)", c.h4_given_13 * k)
                .value_with("witness violation", (c.rhs - c.lhs) * k, json!({"s": c.s.to_one_based(), "t": c.t.to_one_based()}));
            let first = setfn::is_submodular(&ebar, TOLERANCE, false)?;
            report.value(
                "submodularity check",
                if first.is_some() { "FAIL (expected)" } else { "pass (unexpected)" },
            );
            report.assert_slack("H(X4|X1,X2,X3) < H(X4|X1,X3)", (c.h4_given_13 - c.h4_given_123) * k - TOLERANCE);
            report.assert_flag("conditional entropy is not submodular", first.is_some());
        }
        "duality" => {
            let p = distribution(require_input(a)?, &mut log)?;
            let n = p.n();
            let h = a.collection.clone().unwrap_or(CollectionSpec::Singletons).resolve(n, &mut log)?;
            let w = a.weighting.clone().unwrap_or(WeightingSpec::Unit).resolve(&h, Side::Upper, &mut log)?;
            let d = setfn::gap_duality_check(&EntropySetFunction::new(&p)?, &h, &w)?;
            report
                .value("weight", rational::format(&d.weight))
                .value("dual_weight", rational::format(&d.dual_weight))
                .value("gap_upper/weight", d.upper_over_weight * k)
                .value("dual gap_lower/dual weight", d.dual_lower_over_weight * k)
                .value("gap_lower/weight", d.lower_over_weight * k)
                .value("dual gap_upper/dual weight", d.dual_upper_over_weight * k);
            report.assert_slack("upper gap duality", 0.0 - (d.upper_over_weight - d.dual_lower_over_weight).abs() * k);
            report.assert_slack("lower gap duality", 0.0 - (d.lower_over_weight - d.dual_upper_over_weight).abs() * k);
        }
        "monotonicity" => {
            let p = distribution(require_input(a)?, &mut log)?;
            let seq = setfn::gap_monotonicity_sequence(&EntropySetFunction::new(&p)?)?;
            let scaled = |v: &[f64]| v.iter().map(|x| x * k).collect::<Value>();
            report.value("g_U(S_k)", scaled(&seq.upper)).value("g_L(S_k)", scaled(&seq.lower));
            for (name, s) in [("g_U", &seq.upper), ("g_L", &seq.lower)] {
                let worst = s.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
                report.assert_slack(&format!("{name} nonincreasing"), if worst.is_finite() { worst * k } else { 0.0 });
                report.assert_slack(&format!("{name} ends at 0"), 0.0 - s.last().copied().unwrap_or(0.0).abs() * k);
            }
        }
        "tensorization" => {
            let path = require_input(a)?;
            let (file, bytes): (TensorizationFile, _) = formats::load(path)?;
            log.record(path, &bytes);
            let (q, g) = file.build()?;
            let spec = a.collection.clone().unwrap_or(CollectionSpec::LeaveOneOut);
            let h: Hypergraph = spec.resolve(q.n(), &mut log)?;
            let t = relent::tensorization_check(&q, &g, &h)?;
            let id = relent::ent_divergence_identity(&q, &g)?;
            report
                .value("r", t.r)
                .value("Ent_Q(g)", t.lhs * k)
                .value("(1/r) E_Q sum Ent_Q_s(g)", t.rhs * k)
                .value("E_Q g", rational::format(&id.mean))
                .value("D(P||Q)", id.divergence * k);
            report.assert_slack("tensorization", (t.rhs - t.lhs) * k);
            report.assert_slack("Ent = E g * D", 0.0 - (id.ent - rational::to_f64(&id.mean) * id.divergence).abs() * k);
        }
        other => return Err(CliError::Parse(format!("unknown check {other:?}"))),
    }
    Ok(report.seal(log))
}
