use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use realzeros_core::functions::FunctionId;
use realzeros_core::identities::{
    verify_derivative_identities, verify_f_square_decomposition, verify_f_square_expansion,
    verify_k_square_decomposition, verify_mellin_barnes, verify_xi_star_k, IdentityReport,
    MellinBarnesSpec,
};
use realzeros_core::kernels::{
    f_taylor, g_taylor, scan_kernel_properties, KernelGrid, KernelKind, ScanStatus,
    COEFFICIENT_CLAIM_TOL, CONJECTURE_TOL, MAX_ORDER,
};
use realzeros_core::numerics::QuadratureSpec;
use realzeros_core::zeros::{certify_reality, jensen_scan, scan_real_zeros, Rectangle, WindingSpec};
use realzeros_core::Error;

use crate::args::{
    CertifyArgs, Command, EvalArgs, FnArgs, FnName, IdentityName, JensenArgs, KernelArgs,
    ScanArgs, VerifyArgs, Which, ZerosCommand,
};
use crate::parse::{self, positive, real, required, values, values_or};
use crate::report::{num, opt_num, Output, Verdict};
use crate::Failure;

/// Maps an error raised while computing onto the exit-code classes.
fn computing(e: Error) -> Failure {
    match e {
        Error::Parameter(_) | Error::Contour { .. } | Error::Order { .. } => {
            Failure::Invalid(e.to_string())
        }
        Error::IntegrandNegative { .. } => Failure::Claim(e.to_string()),
        _ => Failure::Numerical(e.to_string()),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report rows serialize")
}

pub fn run(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::Kernels(a) => kernels(a),
        Command::Zeros(ZerosCommand::Scan(a)) => zeros_scan(a),
        Command::Zeros(ZerosCommand::Certify(a)) => zeros_certify(a),
        Command::Jensen(a) => jensen(a),
    }
}

pub fn function_id(f: &FnArgs) -> Result<FunctionId, Failure> {
    let given = [
        ("a", &f.a),
        ("c", &f.c),
        ("A", &f.big_a),
        ("B", &f.big_b),
        ("b", &f.b),
    ];
    let takes: &[&str] = match f.function {
        FnName::K => &["a"],
        FnName::F => &["a", "c"],
        FnName::XiGeneral => &["A", "B", "a", "b", "c"],
        _ => &[],
    };
    for (flag, v) in given {
        if v.is_some() && !takes.contains(&flag) {
            return Err(Failure::Invalid(format!(
                "--fn {} does not take --{flag}",
                fn_label(f.function)
            )));
        }
    }
    let need = |flag: &str| -> Result<f64, Failure> {
        let v = given.iter().find(|(g, _)| *g == flag).unwrap().1;
        match v {
            Some(s) => real(s),
            None => Err(Failure::Invalid(format!(
                "--fn {} needs --{flag}",
                fn_label(f.function)
            ))),
        }
    };
    let fid = match f.function {
        FnName::K => FunctionId::KOrder { a: need("a")? },
        FnName::F => FunctionId::F {
            a: need("a")?,
            c: need("c")?,
        },
        FnName::XiStar => FunctionId::XiStar,
        FnName::XiStarStar => FunctionId::XiStarStar,
        FnName::XiGeneral => FunctionId::XiGeneral {
            big_a: need("A")?,
            big_b: need("B")?,
            a: need("a")?,
            b: need("b")?,
            c: need("c")?,
        },
        FnName::RiemannXi => FunctionId::RiemannXi,
        FnName::ControlZ2p1 => FunctionId::ControlZ2p1,
    };
    fid.validate().map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(fid)
}

fn fn_label(f: FnName) -> String {
    to_value(&f).as_str().unwrap_or_default().to_string()
}

fn eval(args: &EvalArgs) -> Result<Output, Failure> {
    let fid = function_id(&args.function)?;
    let mut points: Vec<Complex64> = args
        .z
        .iter()
        .map(|s| parse::complex(s))
        .collect::<Result<_, _>>()?;
    if !args.x.is_empty() {
        let xs = values(&args.x, "x")?;
        let ys = values_or(&args.y, "y", &[0.0])?;
        for &x in &xs {
            points.extend(ys.iter().map(|&y| Complex64::new(x, y)));
        }
    } else if !args.y.is_empty() {
        return Err(Failure::Invalid("--y needs --x".into()));
    }
    if points.is_empty() {
        return Err(Failure::Invalid("eval needs --x or --z".into()));
    }
    let vals: Vec<Complex64> = points
        .par_iter()
        .map(|&z| fid.eval(z))
        .collect::<Result<_, _>>()
        .map_err(computing)?;

    let name = fid.to_string();
    let mut out = Output {
        results: Vec::with_capacity(points.len()),
        verdicts: vec![Verdict::Unjudged; points.len()],
        details: None,
        csv_header: &["function", "x", "y", "re", "im"],
        csv_rows: Vec::with_capacity(points.len()),
        exit: 0,
    };
    for (z, v) in points.iter().zip(&vals) {
        out.results.push(json!({
            "function": name,
            "x": z.re,
            "y": z.im,
            "re": v.re,
            "im": v.im,
        }));
        out.csv_rows
            .push(vec![name.clone(), num(z.re), num(z.im), num(v.re), num(v.im)]);
    }
    Ok(out)
}

/// One verification point; `None` where the identity has no such parameter.
#[derive(Clone, Copy)]
struct Point {
    a: Option<f64>,
    c: Option<f64>,
    x: f64,
    y: f64,
}

fn verify(args: &VerifyArgs) -> Result<Output, Failure> {
    let id = args.identity;
    let uses_a = id != IdentityName::Xistar;
    let uses_c = matches!(id, IdentityName::F2 | IdentityName::F3);
    if !uses_a && !args.a.is_empty() {
        return Err(Failure::Invalid("--identity xistar does not take --a".into()));
    }
    if !uses_c && !args.c.is_empty() {
        return Err(Failure::Invalid(format!(
            "--identity {} does not take --c",
            to_value(&id).as_str().unwrap_or_default()
        )));
    }
    if id != IdentityName::Mellin && args.cline.is_some() {
        return Err(Failure::Invalid("--cline applies to --identity mellin only".into()));
    }
    let a_list: Vec<Option<f64>> = if uses_a {
        let a = required(&args.a, "a")?;
        if let Some(bad) = a.iter().find(|&&v| !(v > 0.0)) {
            return Err(Failure::Invalid(format!("--a must be positive, got {bad}")));
        }
        a.into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let c_list: Vec<Option<f64>> = if uses_c {
        required(&args.c, "c")?.into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    let xs = required(&args.x, "x")?;
    let ys = values_or(&args.y, "y", &[0.0])?;

    let cline = args.cline.as_deref().map(real).transpose()?;
    let height = positive(&args.height, "height")?;
    let contour_step = positive(&args.contour_step, "contour-step")?;
    if let Some(c_line) = cline {
        if let Some(&y) = ys.iter().find(|y| !(c_line < -y.abs())) {
            return Err(Failure::Invalid(
                Error::Contour {
                    c_line,
                    bound: -y.abs(),
                }
                .to_string(),
            ));
        }
    }

    let mut points = Vec::new();
    for &a in &a_list {
        for &c in &c_list {
            for &x in &xs {
                points.extend(ys.iter().map(|&y| Point { a, c, x, y }));
            }
        }
    }

    let quad = QuadratureSpec::default();
    let rows: Vec<Vec<Value>> = points
        .par_iter()
        .map(|p| -> Result<Vec<Value>, Error> {
            let a = p.a.unwrap_or(f64::NAN);
            let c = p.c.unwrap_or(f64::NAN);
            let one = |r: IdentityReport| vec![to_value(&r)];
            Ok(match id {
                IdentityName::Kp => one(verify_k_square_decomposition(a, p.x, p.y, &quad)?),
                IdentityName::Xistar => one(verify_xi_star_k(Complex64::new(p.x, p.y))?),
                IdentityName::Mellin => {
                    let mut mb = MellinBarnesSpec::for_y(p.y);
                    if let Some(c_line) = cline {
                        mb.c_line = c_line;
                    }
                    mb.height = height;
                    mb.step = contour_step;
                    one(verify_mellin_barnes(a, p.x, p.y, &mb)?)
                }
                IdentityName::F2 => one(verify_f_square_expansion(a, c, p.x, p.y)?),
                IdentityName::F3 => one(verify_f_square_decomposition(a, c, p.x, p.y)?),
                IdentityName::Deriv => {
                    let d = verify_derivative_identities(a, p.x, p.y)?;
                    [d.first, d.second]
                        .into_iter()
                        .map(|mut r| {
                            // The kernel and left-hand sign conditions are
                            // part of the claim.
                            r.pass &= d.signs_hold;
                            let mut v = to_value(&r);
                            v["signs_hold"] = json!(d.signs_hold);
                            v["min_first_kernel"] = json!(d.min_first_kernel);
                            v["min_second_kernel"] = json!(d.min_second_kernel);
                            v
                        })
                        .collect()
                }
            })
        })
        .collect::<Result<_, _>>()
        .map_err(computing)?;
    let results: Vec<Value> = rows.into_iter().flatten().collect();

    let field = |v: &Value, k: &str| v[k].as_f64();
    let mut out = Output {
        verdicts: Vec::with_capacity(results.len()),
        details: None,
        csv_header: &[
            "identity",
            "a",
            "c",
            "x",
            "y",
            "lhs",
            "rhs",
            "abs_residual",
            "rel_residual",
            "tol",
            "pass",
        ],
        csv_rows: Vec::with_capacity(results.len()),
        exit: 0,
        results: Vec::new(),
    };
    for r in &results {
        let pass = r["pass"].as_bool() == Some(true);
        out.verdicts.push(if pass { Verdict::Pass } else { Verdict::Fail });
        out.csv_rows.push(vec![
            r["identity"].as_str().unwrap_or_default().to_string(),
            opt_num(field(r, "a")),
            opt_num(field(r, "c")),
            opt_num(field(r, "x")),
            opt_num(field(r, "y")),
            opt_num(field(r, "lhs")),
            opt_num(field(r, "rhs")),
            opt_num(field(r, "abs_residual")),
            opt_num(field(r, "rel_residual")),
            opt_num(field(r, "tol")),
            pass.to_string(),
        ]);
    }
    if out.verdicts.contains(&Verdict::Fail) {
        out.exit = 1;
    }
    out.results = results;
    Ok(out)
}

fn kernels(args: &KernelArgs) -> Result<Output, Failure> {
    let kind = match args.which {
        Which::F => KernelKind::F,
        Which::G => KernelKind::G,
    };
    let mut grid = KernelGrid::default_for(kind);
    if !args.t.is_empty() {
        grid.t = values(&args.t, "t")?;
    }
    if let Some(t) = grid.t.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
        return Err(Failure::Invalid(format!("--t values must lie in (0, 1), got {t}")));
    }
    if !args.c.is_empty() {
        if kind == KernelKind::F {
            return Err(Failure::Invalid("--which f does not take --c".into()));
        }
        grid.c = values(&args.c, "c")?;
    }
    if !args.y.is_empty() {
        grid.y = values(&args.y, "y")?;
    }
    if let Some(order) = args.order {
        if order > MAX_ORDER {
            return Err(Failure::Invalid(
                Error::Order {
                    requested: order,
                    cap: MAX_ORDER,
                }
                .to_string(),
            ));
        }
        if order < 2 {
            return Err(Failure::Invalid(format!("--order must be at least 2, got {order}")));
        }
        grid.order = order;
    }

    let report = scan_kernel_properties(&grid).map_err(computing)?;
    let (verdict, exit) = match report.status {
        ScanStatus::Clean => (Verdict::Pass, 0),
        ScanStatus::ClaimFailure => (Verdict::Fail, 1),
        ScanStatus::NumericalFailure => (Verdict::Fail, 3),
        ScanStatus::Finding => (Verdict::Finding, 4),
    };
    let label = to_value(&kind).as_str().unwrap_or_default().to_string();
    let shifts: Vec<Option<f64>> = match kind {
        KernelKind::F => vec![None],
        KernelKind::G => grid.c.iter().map(|&c| Some(c)).collect(),
    };

    let mut out = Output {
        results: vec![to_value(&report)],
        verdicts: vec![verdict],
        details: None,
        csv_header: &[],
        csv_rows: Vec::new(),
        exit,
    };
    if args.emit_coeffs {
        let pairs: Vec<(f64, Option<f64>)> = grid
            .t
            .iter()
            .flat_map(|&t| shifts.iter().map(move |&c| (t, c)))
            .collect();
        let tables: Vec<(f64, Option<f64>, Vec<f64>)> = pairs
            .par_iter()
            .map(|&(t, c)| {
                let s = match c {
                    None => f_taylor(t, grid.order)?,
                    Some(c) => g_taylor(t, c, grid.order)?,
                };
                Ok((t, c, s.coeffs().to_vec()))
            })
            .collect::<Result<_, Error>>()
            .map_err(computing)?;
        out.csv_header = &["kind", "t", "c", "k", "coefficient"];
        for (t, c, cs) in &tables {
            for (k, v) in cs.iter().enumerate() {
                out.csv_rows
                    .push(vec![label.clone(), num(*t), opt_num(*c), k.to_string(), num(*v)]);
            }
        }
        out.details = Some(json!({
            "coefficients": tables
                .iter()
                .map(|(t, c, cs)| json!({"t": t, "c": c, "coefficients": cs}))
                .collect::<Vec<_>>()
        }));
    } else {
        let tol = match kind {
            KernelKind::F => COEFFICIENT_CLAIM_TOL,
            KernelKind::G => CONJECTURE_TOL,
        };
        out.csv_header = &[
            "kind",
            "t",
            "c",
            "k",
            "min_coefficient",
            "max_coefficient",
            "tol",
            "status",
        ];
        let status = to_value(&report.status).as_str().unwrap_or_default().to_string();
        for m in &report.minima_by_parameter {
            out.csv_rows.push(vec![
                label.clone(),
                num(m.t),
                opt_num(m.c),
                m.k.to_string(),
                num(m.value),
                num(m.max_coefficient),
                num(tol),
                status.clone(),
            ]);
        }
    }
    Ok(out)
}

fn zeros_scan(args: &ScanArgs) -> Result<Output, Failure> {
    let fid = function_id(&args.function)?;
    let [lo, hi] = [real(&args.x[0])?, real(&args.x[1])?];
    if !(lo < hi) {
        return Err(Failure::Invalid(format!("--x needs LO < HI, got {lo} {hi}")));
    }
    let step = positive(&args.step, "step")?;
    let list = scan_real_zeros(&fid, lo, hi, step).map_err(computing)?;
    let name = fid.to_string();
    for s in &list.suspects {
        eprintln!("warning: |f| dips towards zero without a sign change near x = {s}");
    }
    Ok(Output {
        results: list
            .zeros
            .iter()
            .map(|z| {
                json!({
                    "function": name,
                    "location": z.location,
                    "bracket_width": z.bracket_width,
                    "simple": z.simple,
                })
            })
            .collect(),
        verdicts: vec![Verdict::Unjudged; list.zeros.len()],
        details: Some(json!({ "suspects": list.suspects })),
        csv_header: &["function", "location", "bracket_width", "simple"],
        csv_rows: list
            .zeros
            .iter()
            .map(|z| {
                vec![
                    name.clone(),
                    num(z.location),
                    num(z.bracket_width),
                    z.simple.to_string(),
                ]
            })
            .collect(),
        exit: 0,
    })
}

fn zeros_certify(args: &CertifyArgs) -> Result<Output, Failure> {
    let fid = function_id(&args.function)?;
    let r: Vec<f64> = args.rect.iter().map(|s| real(s)).collect::<Result<_, _>>()?;
    let rect = Rectangle::new(r[0], r[1], r[2], r[3]).map_err(|e| Failure::Invalid(e.to_string()))?;
    if !rect.is_symmetric() {
        return Err(Failure::Invalid(format!(
            "--rect must be symmetric about the real axis, got y in [{}, {}]",
            rect.y_lo, rect.y_hi
        )));
    }
    let step = positive(&args.step, "step")?;
    let spec = WindingSpec {
        spacing: positive(&args.spacing, "spacing")?,
        ..WindingSpec::default()
    };
    let cert = certify_reality(&fid, &rect, step, &spec).map_err(computing)?;
    let row = vec![
        cert.function.clone(),
        num(rect.x_lo),
        num(rect.x_hi),
        num(rect.y_lo),
        num(rect.y_hi),
        cert.winding_count.to_string(),
        cert.winding_count_refined.to_string(),
        cert.real_zeros_found.to_string(),
        num(cert.boundary_min_modulus),
        num(cert.boundary_min_relative),
        num(cert.boundary_tol),
        cert.certified.to_string(),
    ];
    Ok(Output {
        results: vec![to_value(&cert)],
        verdicts: vec![if cert.certified {
            Verdict::Pass
        } else {
            Verdict::Fail
        }],
        details: None,
        csv_header: &[
            "function",
            "x_lo",
            "x_hi",
            "y_lo",
            "y_hi",
            "winding_count",
            "winding_count_refined",
            "real_zeros_found",
            "boundary_min_modulus",
            "boundary_min_relative",
            "boundary_tol",
            "certified",
        ],
        csv_rows: vec![row],
        exit: if cert.certified { 0 } else { 1 },
    })
}

fn jensen(args: &JensenArgs) -> Result<Output, Failure> {
    let fid = function_id(&args.function)?;
    let xs = required(&args.x, "x")?;
    let ys = required(&args.y, "y")?;
    let rep = jensen_scan(&fid, &xs, &ys).map_err(computing)?;
    let row = vec![
        rep.function.clone(),
        num(rep.min_first),
        num(rep.min_first_at[0]),
        num(rep.min_first_at[1]),
        num(rep.min_second),
        num(rep.min_second_at[0]),
        num(rep.min_second_at[1]),
        rep.points.to_string(),
        num(rep.tol),
        rep.pass.to_string(),
    ];
    Ok(Output {
        results: vec![to_value(&rep)],
        verdicts: vec![if rep.pass { Verdict::Pass } else { Verdict::Fail }],
        details: None,
        csv_header: &[
            "function",
            "min_first",
            "min_first_x",
            "min_first_y",
            "min_second",
            "min_second_x",
            "min_second_y",
            "points",
            "tol",
            "pass",
        ],
        csv_rows: vec![row],
        exit: if rep.pass { 0 } else { 1 },
    })
}
