//! Subcommand bodies. Each builds a [`Table`], writes it to `--out` and
//! optionally renders an SVG next to it.

use std::path::Path;

use stein_shrink::{
    conditional_delta_closed, conditional_losses, estimate_delta_mc, estimate_exceedance_prob,
    expected_chi_norm, expected_chi_norm_asymptotic, ngo_projection, risk_delta_approx,
    risk_delta_exact, simulate_cloud, ProblemConfig, SeriesControl,
};

use crate::svg::{Plot, Series, Style};
use crate::table::{write_atomic, Field, Table};
use crate::{
    verify, CliError, CloudArgs, Command, ConditionalArgs, ExceedanceArgs, GeometryArgs,
    RiskCurveArgs, SpecialArgs, VerifyArgs, EXIT_FAILURE, EXIT_OK,
};

const PALETTE: [&str; 6] = [
    "steelblue",
    "darkorange",
    "seagreen",
    "crimson",
    "purple",
    "saddlebrown",
];

pub fn dispatch(command: &Command) -> Result<i32, CliError> {
    let done = match command {
        Command::Cloud(args) => cloud(args),
        Command::RiskCurve(args) => risk_curve(args),
        Command::Conditional(args) => conditional(args),
        Command::Geometry(args) => geometry(args),
        Command::Special(args) => special(args),
        Command::Exceedance(args) => exceedance(args),
        Command::Verify(args) => return Ok(run_verify(args)),
    };
    done.map(|()| EXIT_OK)
}

fn write_svg(path: Option<&Path>, plot: Plot) -> Result<(), CliError> {
    if let Some(path) = path {
        write_atomic(path, plot.render().as_bytes())?;
    }
    Ok(())
}

pub fn cloud(args: &CloudArgs) -> Result<(), CliError> {
    let config = ProblemConfig::new(args.p, args.theta, args.seed)?;
    let sample = simulate_cloud(&config, args.n)?;
    let mut table = Table::new(&["idx", "x1", "r"]);
    for (i, z) in sample.points.iter().enumerate() {
        table.push(vec![i.into(), z.x1().into(), z.r().into()]);
    }
    table.write_to(&args.out)?;

    let points = sample.points.iter().map(|z| (z.x1(), z.r())).collect();
    let plot = Plot::new(
        format!(
            "{} observations of Z, p = {}, ϑ = {}",
            args.n, args.p, args.theta
        ),
        "X1",
        "R",
    )
    .with(Series::new("Z", points, Style::Dots, PALETTE[0]))
    .with(Series::new(
        "θ",
        vec![(args.theta, 0.0)],
        Style::Marker,
        PALETTE[3],
    ));
    write_svg(args.svg.as_deref(), plot)
}

pub fn risk_curve(args: &RiskCurveArgs) -> Result<(), CliError> {
    let ctl = SeriesControl::default();
    let mut table = Table::new(&[
        "p",
        "theta",
        "c",
        "delta_exact",
        "delta_approx",
        "delta_mc_mean",
        "delta_mc_stderr",
    ]);
    let mut plot = Plot::new("Risk improvement over the identity", "ϑ", "Δ");
    for &p in args.p.iter() {
        for &c in args.c.iter() {
            let mut exact_pts = Vec::with_capacity(args.theta.len());
            let mut approx_pts = Vec::with_capacity(args.theta.len());
            for &theta in args.theta.iter() {
                let exact = risk_delta_exact(p, theta, c, ctl)?;
                let approx = risk_delta_approx(p, theta, c);
                let (mc_mean, mc_stderr) = match args.mc_n {
                    Some(n) => {
                        let est =
                            estimate_delta_mc(&ProblemConfig::new(p, theta, args.seed)?, c, n)?;
                        (Some(est.mean), Some(est.stderr))
                    }
                    None => (None, None),
                };
                table.push(vec![
                    p.into(),
                    theta.into(),
                    c.into(),
                    exact.into(),
                    approx.into(),
                    mc_mean.into(),
                    mc_stderr.into(),
                ]);
                exact_pts.push((theta, exact));
                approx_pts.push((theta, approx));
            }
            let color = PALETTE[plot.series.len() / 2 % PALETTE.len()];
            plot = plot
                .with(Series::new(
                    format!("exact p={p} C={c}"),
                    exact_pts,
                    Style::Line,
                    color,
                ))
                .with(Series::new(
                    format!("approx p={p} C={c}"),
                    approx_pts,
                    Style::Dots,
                    color,
                ));
        }
    }
    table.write_to(&args.out)?;
    write_svg(args.svg.as_deref(), plot)
}

pub fn conditional(args: &ConditionalArgs) -> Result<(), CliError> {
    let mut table = Table::new(&[
        "p",
        "theta",
        "c",
        "l_plus_1",
        "l_plus_2",
        "l_minus_1",
        "l_minus_2",
        "delta_direct",
        "delta_closed",
    ]);
    for &p in args.p.iter() {
        for &theta in args.theta.iter() {
            for &c in args.c.iter() {
                let b = conditional_losses(p, theta, c)?;
                let closed = conditional_delta_closed(p, theta, c)?;
                table.push(vec![
                    p.into(),
                    theta.into(),
                    c.into(),
                    b.l_plus_1.into(),
                    b.l_plus_2.into(),
                    b.l_minus_1.into(),
                    b.l_minus_2.into(),
                    b.delta.into(),
                    closed.into(),
                ]);
            }
        }
    }
    table.write_to(&args.out)?;
    Ok(())
}

pub fn geometry(args: &GeometryArgs) -> Result<(), CliError> {
    let g = ngo_projection(args.p, args.theta)?;
    let mut table = Table::new(&[
        "ax",
        "ay",
        "bx",
        "by",
        "cx",
        "cy",
        "len_ab",
        "len_ob",
        "len_bc",
        "shrink_factor",
    ]);
    table.push(vec![
        g.a[0].into(),
        g.a[1].into(),
        g.b[0].into(),
        g.b[1].into(),
        g.c_point[0].into(),
        g.c_point[1].into(),
        g.len_ab.into(),
        g.len_ob.into(),
        g.len_bc.into(),
        g.shrink_factor.into(),
    ]);
    table.write_to(&args.out)?;

    let mut plot = Plot::new(
        format!("Projection, p = {}, ϑ = {}", args.p, args.theta),
        "x1",
        "r",
    )
    .with(Series::new(
        "O–B",
        vec![(0.0, 0.0), (g.b[0], g.b[1])],
        Style::Line,
        PALETTE[0],
    ))
    .with(Series::new(
        "A–B",
        vec![(g.a[0], g.a[1]), (g.b[0], g.b[1])],
        Style::Line,
        PALETTE[2],
    ))
    .with(Series::new(
        "A–C",
        vec![(g.a[0], g.a[1]), (g.c_point[0], g.c_point[1])],
        Style::Line,
        PALETTE[1],
    ))
    .with(Series::new(
        "A, B, C",
        vec![
            (g.a[0], g.a[1]),
            (g.b[0], g.b[1]),
            (g.c_point[0], g.c_point[1]),
        ],
        Style::Marker,
        PALETTE[3],
    ));
    plot.equal_aspect = true;
    write_svg(args.svg.as_deref(), plot)
}

pub fn special(args: &SpecialArgs) -> Result<(), CliError> {
    let mut table = Table::new(&["p", "e_r_exact", "e_r_asymptotic"]);
    for &p in args.p.iter() {
        table.push(vec![
            p.into(),
            expected_chi_norm(p)?.into(),
            expected_chi_norm_asymptotic(p)?.into(),
        ]);
    }
    table.write_to(&args.out)?;
    Ok(())
}

pub fn exceedance(args: &ExceedanceArgs) -> Result<(), CliError> {
    let mut table = Table::new(&["p", "theta", "prob", "stderr"]);
    for &p in args.p.iter() {
        for &theta in args.theta.iter() {
            let est = estimate_exceedance_prob(&ProblemConfig::new(p, theta, args.seed)?, args.n)?;
            table.push(vec![
                p.into(),
                theta.into(),
                est.mean.into(),
                Field::Real(est.stderr),
            ]);
        }
    }
    table.write_to(&args.out)?;
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> i32 {
    let options = verify::VerifyOptions {
        seed: args.seed,
        fast: args.fast,
    };
    let reports = verify::run_all(&options);
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "{} of {} criteria passed",
        reports.len() - failed,
        reports.len()
    );
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}
