use std::io::Write;

use anyhow::{anyhow, bail, Result};
use clap::ValueEnum;
use ngbounds::bounds::{sweep_exhaustive, SweepSummary};
use ngbounds::families::{
    four_block_brackets, four_block_mu2_closed_form, four_block_mun_closed_form,
    split_mu1_closed_form, split_mu1_sum,
};
use ngbounds::numfmt::{sig12, sig12_opt, sig12_vec};
use ngbounds::search::{sweep_table, upper_bound, NamedBound, ProbeResult, SweepCell};
use ngbounds::{
    adjacency_spectrum, full_report, probe_random, BlockPattern, BoundReport, FamilySpec, Graph,
    SearchOptions, SearchResult, SpectralPair,
};
use serde::Serialize;

use crate::args::{
    Emit, FamilyArgs, FamilyKind, Format, IndexArg, ProbeArgs, QuotientArgs, SearchArgs,
    SpectrumArgs, VerifyArgs,
};
use crate::input;
use crate::output::{self, fmt, join_sig, opt, Sink};
use crate::Status;

#[derive(Serialize)]
struct SpectrumOut {
    graph: String,
    n: usize,
    m: usize,
    #[serde(serialize_with = "sig12_vec")]
    spectrum: Vec<f64>,
    #[serde(serialize_with = "sig12_vec")]
    complement_spectrum: Vec<f64>,
}

pub fn spectrum(a: SpectrumArgs) -> Result<Status> {
    let format = a.output.format_or(Format::Plain);
    let mut w = output::open(&a.output)?;
    let mut csv_started = false;
    for item in input::graphs(&a.source)? {
        let g = item?;
        let p = SpectralPair::new(&g)?;
        let out = SpectrumOut {
            graph: g.to_graph6(),
            n: g.order(),
            m: g.edge_count(),
            spectrum: p.spectrum.values().to_vec(),
            complement_spectrum: p.complement_spectrum.values().to_vec(),
        };
        match format {
            Format::Json => output::json_line(&mut w, &out)?,
            Format::Csv => {
                let mut c = output::csv_writer(&mut w);
                if !csv_started {
                    c.write_record(["graph", "index", "mu", "mu_complement"])?;
                    csv_started = true;
                }
                for (i, (x, y)) in out
                    .spectrum
                    .iter()
                    .zip(&out.complement_spectrum)
                    .enumerate()
                {
                    c.write_record([out.graph.clone(), (i + 1).to_string(), fmt(*x), fmt(*y)])?;
                }
                c.flush()?;
            }
            Format::Plain => {
                writeln!(w, "{}  n={} m={}", out.graph, out.n, out.m)?;
                writeln!(w, "  G     {}", join_sig(&out.spectrum))?;
                writeln!(w, "  co-G  {}", join_sig(&out.complement_spectrum))?;
            }
        }
    }
    w.flush()?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ClosedForm {
    quantity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "sig12_opt")]
    closed_form: Option<f64>,
    /// Interval from the neighbouring orders divisible by four.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "sig12_pair")]
    bracket: Option<[f64; 2]>,
    #[serde(serialize_with = "sig12")]
    computed: f64,
}

fn sig12_pair<S: serde::Serializer>(x: &Option<[f64; 2]>, s: S) -> Result<S::Ok, S::Error> {
    let [a, b] = x.expect("skipped when absent");
    sig12_vec(&[a, b], s)
}

#[derive(Serialize)]
struct FamilyOut {
    family: FamilySpec,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_forms: Option<Vec<ClosedForm>>,
}

fn family_spec(a: &FamilyArgs) -> Result<FamilySpec> {
    let n = a.n;
    let kind = a.kind.to_possible_value().expect("no skipped variants");
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| anyhow!("--kind {} needs --{flag}", kind.get_name()))
    };
    Ok(match a.kind {
        FamilyKind::Complete => FamilySpec::Complete { n },
        FamilyKind::Empty => FamilySpec::Empty { n },
        FamilyKind::CompleteSplit => FamilySpec::CompleteSplit {
            n,
            r: need(a.r, "r")?,
        },
        FamilyKind::Turan => FamilySpec::Turan {
            n,
            k: need(a.k, "k")?,
        },
        FamilyKind::FourBlock => FamilySpec::FourBlock { n },
    })
}

fn closed_forms(spec: FamilySpec, g: &Graph) -> Result<Vec<ClosedForm>> {
    let p = SpectralPair::new(g)?;
    let s = &p.spectrum;
    let exact = |quantity, value, computed| ClosedForm {
        quantity,
        closed_form: Some(value),
        bracket: None,
        computed,
    };
    let n = g.order();
    let mut out = Vec::new();
    match spec {
        FamilySpec::Complete { n } => {
            out.push(exact("mu_1", n as f64 - 1.0, s.largest()));
            if n >= 2 {
                out.push(exact("mu_n", -1.0, s.smallest()));
            }
        }
        FamilySpec::Empty { .. } => out.push(exact("mu_1", 0.0, s.largest())),
        FamilySpec::CompleteSplit { n, r } => {
            out.push(exact("mu_1", split_mu1_closed_form(n, r), s.largest()));
            out.push(exact(
                "mu_1 + mu_1(complement)",
                split_mu1_sum(n, r),
                p.abs_sum(1),
            ));
        }
        FamilySpec::Turan { n, k } if n % k == 0 => {
            let q = (n / k) as f64;
            out.push(exact("mu_1", n as f64 - q, s.largest()));
            if k >= 2 {
                out.push(exact("mu_n", -q, s.smallest()));
            }
        }
        FamilySpec::Turan { .. } => {}
        FamilySpec::FourBlock { .. } if n.is_multiple_of(4) => {
            out.push(exact("mu_2", four_block_mu2_closed_form(n)?, s.mu(2)?));
            out.push(exact("mu_n", four_block_mun_closed_form(n)?, s.smallest()));
        }
        FamilySpec::FourBlock { .. } => {
            let b = four_block_brackets(n)?;
            for (quantity, br, computed) in
                [("mu_2", b.mu2, s.mu(2)?), ("mu_n", b.mun, s.smallest())]
            {
                out.push(ClosedForm {
                    quantity,
                    closed_form: None,
                    bracket: Some([br.lo, br.hi]),
                    computed,
                });
            }
        }
    }
    Ok(out)
}

fn family_label(spec: &FamilySpec) -> String {
    match *spec {
        FamilySpec::Complete { n } => format!("complete n={n}"),
        FamilySpec::Empty { n } => format!("empty n={n}"),
        FamilySpec::CompleteSplit { n, r } => format!("complete_split n={n} r={r}"),
        FamilySpec::Turan { n, k } => format!("turan n={n} k={k}"),
        FamilySpec::FourBlock { n } => format!("four_block n={n}"),
    }
}

pub fn family(a: FamilyArgs) -> Result<Status> {
    let spec = family_spec(&a)?;
    let g = spec.build()?;
    let out = FamilyOut {
        family: spec,
        n: g.order(),
        m: g.edge_count(),
        graph6: (a.emit == Some(Emit::Graph6)).then(|| g.to_graph6()),
        closed_forms: a.closed_forms.then(|| closed_forms(spec, &g)).transpose()?,
    };
    let mut w = output::open(&a.output)?;
    match a.output.format_or(Format::Plain) {
        Format::Json => output::json(&mut w, &out)?,
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record([
                "family",
                "n",
                "m",
                "graph6",
                "quantity",
                "closed_form",
                "bracket_lo",
                "bracket_hi",
                "computed",
            ])?;
            let head = [
                family_label(&spec),
                out.n.to_string(),
                out.m.to_string(),
                out.graph6.clone().unwrap_or_default(),
            ];
            let forms = out.closed_forms.as_deref().unwrap_or_default();
            if forms.is_empty() {
                c.write_record(
                    head.iter()
                        .cloned()
                        .chain(std::iter::repeat_n(String::new(), 5)),
                )?;
            }
            for f in forms {
                let [lo, hi] = f.bracket.map_or([None, None], |[l, h]| [Some(l), Some(h)]);
                c.write_record(head.iter().cloned().chain([
                    f.quantity.to_string(),
                    opt(f.closed_form),
                    opt(lo),
                    opt(hi),
                    fmt(f.computed),
                ]))?;
            }
            c.flush()?;
        }
        Format::Plain => {
            // a bare graph6 line is convenient for piping
            if out.closed_forms.is_none() && out.graph6.is_some() {
                writeln!(w, "{}", out.graph6.as_deref().unwrap_or_default())?;
            } else {
                writeln!(w, "{}  m={}", family_label(&spec), out.m)?;
                if let Some(g6) = &out.graph6 {
                    writeln!(w, "graph6  {g6}")?;
                }
                for f in out.closed_forms.as_deref().unwrap_or_default() {
                    match (f.closed_form, f.bracket) {
                        (Some(x), _) => writeln!(
                            w,
                            "{:<26}closed {}  computed {}",
                            f.quantity,
                            fmt(x),
                            fmt(f.computed)
                        )?,
                        (None, Some([lo, hi])) => writeln!(
                            w,
                            "{:<26}bracket [{}, {}]  computed {}",
                            f.quantity,
                            fmt(lo),
                            fmt(hi),
                            fmt(f.computed)
                        )?,
                        (None, None) => {}
                    }
                }
                if out.closed_forms.as_ref().is_some_and(Vec::is_empty) {
                    writeln!(w, "no closed form for these parameters")?;
                }
            }
        }
    }
    w.flush()?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct Forced {
    zero: usize,
    minus_one: usize,
}

#[derive(Serialize)]
struct QuotientOut {
    pattern: String,
    k: usize,
    t: usize,
    n: usize,
    r: Vec<Vec<f64>>,
    #[serde(serialize_with = "sig12_vec")]
    r_eigenvalues: Vec<f64>,
    forced: Forced,
    #[serde(serialize_with = "sig12_vec")]
    spectrum: Vec<f64>,
    #[serde(serialize_with = "sig12_vec")]
    direct_spectrum: Vec<f64>,
    /// Largest entrywise difference between the two spectra.
    #[serde(serialize_with = "sig12")]
    residual: f64,
}

pub fn quotient(a: QuotientArgs) -> Result<Status> {
    let pattern = BlockPattern::parse(a.t, &a.inner, &a.join)?;
    if let Some(k) = a.k {
        if k != pattern.classes() {
            bail!(
                "--k {k} does not match --inner {:?} with {} classes",
                a.inner,
                pattern.classes()
            );
        }
    }
    let r = pattern.quotient_matrix();
    let via = pattern.spectrum_via_quotient()?;
    let direct = adjacency_spectrum(&pattern.realize()?)?;
    let residual = via
        .values()
        .iter()
        .zip(direct.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let (zero, minus_one) = pattern.forced_multiplicities();
    let out = QuotientOut {
        pattern: pattern.to_string(),
        k: pattern.classes(),
        t: pattern.class_size(),
        n: pattern.order(),
        r: r.rows(),
        r_eigenvalues: r.eigenvalues()?,
        forced: Forced { zero, minus_one },
        spectrum: via.values().to_vec(),
        direct_spectrum: direct.values().to_vec(),
        residual,
    };
    let mut w = output::open(&a.output)?;
    match a.output.format_or(Format::Plain) {
        Format::Json => output::json(&mut w, &out)?,
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record(["index", "quotient_spectrum", "direct_spectrum"])?;
            for (i, (x, y)) in out.spectrum.iter().zip(&out.direct_spectrum).enumerate() {
                c.write_record([(i + 1).to_string(), fmt(*x), fmt(*y)])?;
            }
            c.flush()?;
        }
        Format::Plain => {
            writeln!(w, "{}  n={}", out.pattern, out.n)?;
            writeln!(w, "R =")?;
            for row in &out.r {
                writeln!(w, "  {}", join_sig(row))?;
            }
            writeln!(w, "eig(R)    {}", join_sig(&out.r_eigenvalues))?;
            writeln!(w, "forced    0 x {}, -1 x {}", zero, minus_one)?;
            writeln!(w, "spectrum  {}", join_sig(&out.spectrum))?;
            writeln!(w, "residual  {}", fmt(out.residual))?;
        }
    }
    w.flush()?;
    Ok(Status::Ok)
}

fn write_report_plain(w: &mut Sink, r: &BoundReport) -> Result<()> {
    let applicable = r.records.iter().filter(|x| x.applicable).count();
    let bad = r.violations().count();
    let verdict = if bad == 0 { "pass" } else { "FAIL" };
    writeln!(
        w,
        "{}  n={} m={}  {verdict} ({applicable} applicable checks, {bad} violated)",
        r.graph, r.n, r.m
    )?;
    for rec in &r.records {
        let mark = match (rec.applicable, rec.is_violation()) {
            (_, true) => "FAIL",
            (true, false) => "ok",
            (false, _) if rec.verdict == ngbounds::Verdict::Fail => "info",
            (false, _) => "--",
        };
        write!(
            w,
            "  {mark:<5}{:<28}{:>16} <= {:<16} slack {}",
            rec.id.to_string(),
            opt(rec.lhs),
            opt(rec.rhs),
            opt(rec.slack)
        )?;
        match rec.note {
            Some(note) => writeln!(w, "  ({note})")?,
            None => writeln!(w)?,
        }
    }
    Ok(())
}

fn write_sweep(w: &mut Sink, format: Format, s: &SweepSummary) -> Result<()> {
    match format {
        Format::Json => output::json(w, s)?,
        Format::Csv => {
            let mut c = output::csv_writer(w);
            c.write_record([
                "n",
                "check",
                "passed",
                "failed",
                "skipped",
                "informational_violations",
                "min_slack",
            ])?;
            for t in &s.tallies {
                c.write_record([
                    s.n.to_string(),
                    t.id.to_string(),
                    t.passed.to_string(),
                    t.failed.to_string(),
                    t.skipped.to_string(),
                    t.informational_violations.to_string(),
                    opt(t.min_slack),
                ])?;
            }
            c.flush()?;
        }
        Format::Plain => {
            let verdict = if s.passed() { "pass" } else { "FAIL" };
            writeln!(w, "n={}  {} graphs  {verdict}", s.n, s.graphs)?;
            for t in &s.tallies {
                writeln!(
                    w,
                    "  {:<28}pass {:>9}  fail {:>6}  skip {:>9}  info-viol {:>9}  min slack {}",
                    t.id.to_string(),
                    t.passed,
                    t.failed,
                    t.skipped,
                    t.informational_violations,
                    opt(t.min_slack)
                )?;
            }
            for f in &s.failures {
                write_report_plain(w, f)?;
            }
        }
    }
    Ok(())
}

pub fn verify(a: VerifyArgs) -> Result<Status> {
    let format = a.output.format_or(Format::Plain);
    let mut w = output::open(&a.output)?;
    let Some(source) = a.source.graphs() else {
        let n = a.source.exhaustive.expect("exhaustive source");
        let summary = sweep_exhaustive(n, a.jobs)?;
        write_sweep(&mut w, format, &summary)?;
        w.flush()?;
        return Ok(if summary.passed() {
            Status::Ok
        } else {
            Status::Violation
        });
    };
    let mut violated = false;
    let mut csv_started = false;
    for item in input::graphs(&source)? {
        let item = match item {
            Ok(item) => item,
            Err(e) => {
                w.flush()?;
                return Err(e);
            }
        };
        let report = full_report(&item)?;
        violated |= !report.passed();
        match format {
            Format::Json => output::json_line(&mut w, &report)?,
            Format::Csv => {
                let mut c = output::csv_writer(&mut w);
                if !csv_started {
                    c.write_record([
                        "graph",
                        "check",
                        "lhs",
                        "rhs",
                        "slack",
                        "verdict",
                        "applicable",
                    ])?;
                    csv_started = true;
                }
                for r in &report.records {
                    let verdict = serde_json::to_value(r.verdict)?;
                    c.write_record([
                        report.graph.clone(),
                        r.id.to_string(),
                        opt(r.lhs),
                        opt(r.rhs),
                        opt(r.slack),
                        verdict.as_str().unwrap_or_default().to_string(),
                        r.applicable.to_string(),
                    ])?;
                }
                c.flush()?;
            }
            Format::Plain => write_report_plain(&mut w, &report)?,
        }
    }
    w.flush()?;
    Ok(if violated {
        Status::Violation
    } else {
        Status::Ok
    })
}

/// `SearchResult` as emitted: `seconds` is null unless timing was requested.
#[derive(Serialize)]
struct SearchOut {
    n: usize,
    k: usize,
    #[serde(serialize_with = "sig12")]
    value: f64,
    witnesses: Vec<String>,
    scanned: u64,
    #[serde(serialize_with = "sig12_opt")]
    seconds: Option<f64>,
}

impl SearchOut {
    fn new(r: SearchResult, timing: bool) -> Self {
        SearchOut {
            n: r.n,
            k: r.k,
            value: r.value,
            witnesses: r.witnesses,
            scanned: r.scanned,
            seconds: timing.then_some(r.seconds),
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    #[serde(flatten)]
    result: SearchOut,
    construction: Option<NamedBound>,
    stated_lower: Option<NamedBound>,
    upper: Option<NamedBound>,
    #[serde(serialize_with = "sig12_opt")]
    lower_margin: Option<f64>,
    #[serde(serialize_with = "sig12_opt")]
    upper_margin: Option<f64>,
}

impl TableRow {
    fn new(c: SweepCell, timing: bool) -> Self {
        TableRow {
            result: SearchOut::new(c.result, timing),
            construction: c.construction,
            stated_lower: c.stated_lower,
            upper: c.upper,
            lower_margin: c.lower_margin,
            upper_margin: c.upper_margin,
        }
    }
}

fn resolve(k: IndexArg, n: usize) -> Result<usize> {
    k.0.resolve(n)
        .ok_or_else(|| anyhow!("index {:?} is outside 1..={n}", k.0))
}

pub fn search(a: SearchArgs) -> Result<Status> {
    let opts = SearchOptions {
        jobs: a.jobs,
        allow_long: a.force,
    };
    let format = a.output.format_or(Format::Json);
    let mut w = output::open(&a.output)?;
    if a.table {
        let ks: Vec<_> = a.k.iter().map(|k| k.0).collect();
        let rows: Vec<TableRow> = sweep_table(a.n.0.clone(), &ks, opts)?
            .into_iter()
            .map(|c| TableRow::new(c, a.timing))
            .collect();
        write_table(&mut w, format, &rows)?;
    } else {
        let (&lo, &hi) = (a.n.0.start(), a.n.0.end());
        if lo != hi || a.k.len() != 1 {
            bail!("a range of orders or several indices needs --table");
        }
        let k = resolve(a.k[0], lo)?;
        let out = SearchOut::new(ngbounds::f_k_exact(lo, k, opts)?, a.timing);
        match format {
            Format::Json => output::json(&mut w, &out)?,
            Format::Csv => write_table(
                &mut w,
                Format::Csv,
                &[TableRow {
                    result: out,
                    construction: None,
                    stated_lower: None,
                    upper: None,
                    lower_margin: None,
                    upper_margin: None,
                }],
            )?,
            Format::Plain => {
                writeln!(
                    w,
                    "f_{}({}) = {}  ({} labelled graphs)",
                    out.k,
                    out.n,
                    fmt(out.value),
                    out.scanned
                )?;
                for g6 in &out.witnesses {
                    writeln!(w, "  witness {g6}")?;
                }
                if let Some(s) = out.seconds {
                    writeln!(w, "  {} s", fmt(s))?;
                }
            }
        }
    }
    w.flush()?;
    Ok(Status::Ok)
}

fn write_table(w: &mut Sink, format: Format, rows: &[TableRow]) -> Result<()> {
    let bound = |b: &Option<NamedBound>| b.as_ref().map(|b| b.value);
    match format {
        Format::Json => output::json(w, &rows)?,
        Format::Csv => {
            let mut c = output::csv_writer(w);
            c.write_record([
                "n",
                "k",
                "value",
                "scanned",
                "construction",
                "stated_lower",
                "upper",
                "upper_proven",
                "lower_margin",
                "upper_margin",
                "witnesses",
                "seconds",
            ])?;
            for r in rows {
                c.write_record([
                    r.result.n.to_string(),
                    r.result.k.to_string(),
                    fmt(r.result.value),
                    r.result.scanned.to_string(),
                    opt(bound(&r.construction)),
                    opt(bound(&r.stated_lower)),
                    opt(bound(&r.upper)),
                    r.upper
                        .as_ref()
                        .map_or_else(String::new, |u| u.proven.to_string()),
                    opt(r.lower_margin),
                    opt(r.upper_margin),
                    r.result.witnesses.join(" "),
                    opt(r.result.seconds),
                ])?;
            }
            c.flush()?;
        }
        Format::Plain => {
            writeln!(
                w,
                "{:>3} {:>3} {:>16} {:>16} {:>16} {:>16}  upper bound",
                "n", "k", "f_k(n)", "construction", "stated lower", "upper"
            )?;
            for r in rows {
                let label = r.upper.as_ref().map_or_else(String::new, |u| {
                    format!(
                        "{}{}",
                        u.label,
                        if u.proven { "" } else { " (unproven here)" }
                    )
                });
                writeln!(
                    w,
                    "{:>3} {:>3} {:>16} {:>16} {:>16} {:>16}  {label}",
                    r.result.n,
                    r.result.k,
                    fmt(r.result.value),
                    opt(bound(&r.construction)),
                    opt(bound(&r.stated_lower)),
                    opt(bound(&r.upper)),
                )?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ProbeOut {
    #[serde(flatten)]
    result: ProbeResult,
    upper: Option<NamedBound>,
    below_upper: Option<bool>,
}

pub fn probe(a: ProbeArgs) -> Result<Status> {
    let k = resolve(a.k, a.n)?;
    let result = probe_random(a.n, k, a.trials, a.seed, a.jobs)?;
    let upper = upper_bound(a.n, k);
    let out = ProbeOut {
        below_upper: upper
            .as_ref()
            .map(|u| result.value <= u.value + ngbounds::bounds::BOUND_TOL),
        upper,
        result,
    };
    let mut w = output::open(&a.output)?;
    match a.output.format_or(Format::Json) {
        Format::Json => output::json(&mut w, &out)?,
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record([
                "n",
                "k",
                "trials",
                "seed",
                "value",
                "witness",
                "source",
                "upper",
                "below_upper",
            ])?;
            let r = &out.result;
            c.write_record([
                r.n.to_string(),
                r.k.to_string(),
                r.trials.to_string(),
                r.seed.to_string(),
                fmt(r.value),
                r.witness.clone(),
                r.source.clone(),
                opt(out.upper.as_ref().map(|u| u.value)),
                out.below_upper.map_or_else(String::new, |b| b.to_string()),
            ])?;
            c.flush()?;
        }
        Format::Plain => {
            let r = &out.result;
            writeln!(
                w,
                "probe n={} k={} trials={} seed={}",
                r.n, r.k, r.trials, r.seed
            )?;
            writeln!(w, "  best {}  from {}", fmt(r.value), r.source)?;
            writeln!(w, "  witness {}", r.witness)?;
            if let Some(u) = &out.upper {
                writeln!(w, "  upper {} = {}", u.label, fmt(u.value))?;
            }
        }
    }
    w.flush()?;
    Ok(Status::Ok)
}
