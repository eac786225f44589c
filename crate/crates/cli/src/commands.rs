use std::fs::File;
use std::io::{self, Write};

use anyhow::{anyhow, bail, Context, Result};
use spinrevival::perturbed_dynamics::tunnel;
use spinrevival::revival::{classify_ratio, evrt, qrt};
use spinrevival::{
    fourier_spectrum, sample_exact, DiagonalModel, FullModel, HalfIntegerSpin, IntegratorConfig,
    RatioClass, Rational, RevivalTime, Trajectory,
};

use crate::args::{
    EvolveArgs, ModelArgs, RevivalArgs, Scalar, SpectrumArgs, SweepArgs, TunnelArgs,
};
use crate::format::{csv_writer, fmt_g, sink};

fn diagonal(m: &ModelArgs) -> DiagonalModel {
    DiagonalModel::new(m.spin, m.bz.to_f64(), m.k.to_f64())
}

fn exact_ratio(bz: &Scalar, k: &Scalar) -> Option<Rational> {
    match (bz.exact(), k.exact()) {
        (Some(bz), Some(k)) if !k.is_zero() => Some(bz / k),
        _ => None,
    }
}

fn require_exact<'a>(value: &'a Scalar, flag: &str) -> Result<&'a Rational> {
    value.exact().ok_or_else(|| {
        anyhow!("--{flag} {value} is a decimal; revival times need an exact a/b value (or --irrational)")
    })
}

/// `"c pi hbar/K = t"`, or `"inf"`.
fn describe(t: &RevivalTime, k: f64) -> String {
    match t.coefficient() {
        Some(c) => format!("{c} pi hbar/K = {}", fmt_g(t.time(k))),
        None => "inf".into(),
    }
}

fn alpha(e: &RevivalTime, q: &RevivalTime) -> String {
    match (e.coefficient(), q.coefficient()) {
        (Some(e), Some(q)) => (q / e).to_string(),
        _ => "undefined".into(),
    }
}

pub fn write_trajectory(
    traj: &Trajectory,
    spin: HalfIntegerSpin,
    out: Box<dyn Write>,
) -> Result<()> {
    let mut w = csv_writer(out);
    let mut header: Vec<String> = ["t", "sx", "sy", "sz", "norm"].map(String::from).to_vec();
    for j in 0..spin.dimension() {
        let label = spin.level_label(j);
        header.push(format!("re_m{label}"));
        header.push(format!("im_m{label}"));
    }
    w.write_record(&header)?;
    let mut row = Vec::with_capacity(header.len());
    for i in 0..traj.len() {
        row.clear();
        for v in [
            traj.times()[i],
            traj.sx()[i],
            traj.sy()[i],
            traj.sz()[i],
            traj.norm()[i],
        ] {
            row.push(fmt_g(v));
        }
        for a in traj.states()[i].amplitudes() {
            row.push(fmt_g(a.re));
            row.push(fmt_g(a.im));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn evolve(args: &EvolveArgs) -> Result<()> {
    let model = diagonal(&args.model);
    let psi0 = args
        .state
        .build(args.model.spin)
        .context("invalid --state")?;
    let traj = sample_exact(&psi0, &model, args.t_end, args.samples)?;
    if let Some(n) = exact_ratio(&args.model.bz, &args.model.k) {
        let k = model.k;
        let ratio = RatioClass::classify(&n);
        match (evrt(model.spin, &ratio, k), qrt(model.spin, &ratio, k)) {
            (Ok(e), Ok(q)) => eprintln!(
                "N = {n} ({}): EVRT {}, QRT {}",
                ratio.label(),
                describe(&e, k),
                describe(&q, k)
            ),
            (Err(e), _) | (_, Err(e)) => eprintln!("N = {n}: no revival prediction ({e})"),
        }
    }
    write_trajectory(&traj, model.spin, sink(args.out.as_deref())?)
}

pub fn spectrum(args: &SpectrumArgs) -> Result<()> {
    let model = diagonal(&args.model);
    let psi0 = args
        .state
        .build(args.model.spin)
        .context("invalid --state")?;
    let spec = fourier_spectrum(&psi0, &model)?;
    let mut out = sink(args.out.as_deref())?;
    {
        let mut w = csv_writer(&mut out);
        w.write_record(["i", "omega", "alpha", "beta"])?;
        for (i, t) in spec.terms.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                fmt_g(t.omega),
                fmt_g(t.alpha),
                fmt_g(t.beta),
            ])?;
        }
        w.flush()?;
    }
    writeln!(out, "# constant_sz={}", fmt_g(spec.constant_sz))?;
    out.flush()?;
    Ok(())
}

pub fn revival(args: &RevivalArgs) -> Result<()> {
    let n = if args.irrational {
        None
    } else if let Some(n) = &args.n {
        Some(require_exact(n, "n")?.clone())
    } else if let Some(bz) = &args.bz {
        let bz = require_exact(bz, "bz")?;
        let k = require_exact(&args.k, "k")?;
        if k.is_zero() {
            bail!("--k must be nonzero");
        }
        Some(bz / k)
    } else {
        bail!("one of --n, --bz or --irrational is required");
    };
    let k = args.k.to_f64();
    let ratio = classify_ratio(n.as_ref());
    let e = evrt(args.spin, &ratio, k)?;
    let q = qrt(args.spin, &ratio, k)?;
    let mut out = io::stdout().lock();
    writeln!(out, "spin: {}", args.spin)?;
    match &n {
        Some(n) => writeln!(out, "n: {n}")?,
        None => writeln!(out, "n: irrational")?,
    }
    writeln!(out, "class: {}", ratio.label())?;
    writeln!(out, "evrt: {}", describe(&e, k))?;
    writeln!(out, "qrt: {}", describe(&q, k))?;
    writeln!(out, "alpha: {}", alpha(&e, &q))?;
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let k_exact = require_exact(&args.k, "k")?;
    if !k_exact.is_positive() {
        bail!("--k must be positive");
    }
    let k = k_exact.to_f64();
    let rows = args
        .bz
        .iter()
        .map(|bz| {
            let n = require_exact(bz, "bz")? / k_exact;
            let ratio = RatioClass::classify(&n);
            let e = evrt(args.spin, &ratio, k).with_context(|| format!("bz = {bz}"))?;
            let q = qrt(args.spin, &ratio, k).with_context(|| format!("bz = {bz}"))?;
            Ok([
                bz.to_string(),
                n.to_string(),
                ratio.label().to_string(),
                fmt_g(e.time(k)),
                fmt_g(q.time(k)),
                alpha(&e, &q),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut w = csv_writer(sink(args.out.as_deref())?);
    w.write_record(["bz", "n", "class", "evrt", "qrt", "alpha"])?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_tunnel(args: &TunnelArgs) -> Result<()> {
    let m = &args.model;
    let bx = args.bx.to_f64();
    if bx == 0.0 {
        bail!("--bx must be nonzero for a tunneling run");
    }
    let model = FullModel::new(m.spin, m.bz.to_f64(), m.k.to_f64(), bx);
    let psi0 = args.state.build(m.spin).context("invalid --state")?;
    let cfg = IntegratorConfig::new(args.dt, args.t_end, args.record_every)?;
    let (traj, report) = tunnel(&psi0, &model, &cfg)?;
    write_trajectory(&traj, m.spin, sink(args.out.as_deref())?)?;
    let json = serde_json::to_string_pretty(&report)? + "\n";
    match (&args.report, &args.out) {
        (Some(p), _) => File::create(p)
            .and_then(|mut f| f.write_all(json.as_bytes()))
            .with_context(|| format!("cannot write {}", p.display()))?,
        (None, Some(_)) => io::stdout().lock().write_all(json.as_bytes())?,
        (None, None) => io::stderr().lock().write_all(json.as_bytes())?,
    }
    Ok(())
}
