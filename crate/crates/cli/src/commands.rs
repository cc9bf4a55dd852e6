use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bmforge_core::distance::{
    banach_mazur_distance, certify_sandwich_with, grunbaum_distance, DistanceOptions, Mode,
};
use bmforge_core::io::{self, AnyReport, DistanceRecord, JohnRecord};
use bmforge_core::john::{
    check_glmp, check_john_certificate_with, extract_contacts, max_volume_position, recenter_search,
};
use bmforge_core::par::map_indexed;
use bmforge_core::polygon::AffineMap;
use bmforge_core::scenario::{run_scenario, ScenarioReport, ScenarioSpec};
use bmforge_core::search::{extremal_pair_search, SearchConfig};
use bmforge_core::{apply_affine, ConvexPolygon, Error, Execution};

use crate::{Format, RunConfig};

pub const OK: u8 = 0;
pub const INPUT: u8 = 1;
pub const NON_CONVERGED: u8 = 2;
pub const NO_CERTIFICATE: u8 = 3;
pub const CHECK_FAILED: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_)
        | Error::Json(_)
        | Error::DegenerateInput(_)
        | Error::OriginNotInterior
        | Error::UnknownScenario(_)
        | Error::ParameterOutOfRange(_)
        | Error::PreconditionViolated(_) => INPUT,
        Error::NonConverged(_) | Error::Infeasible(_) | Error::SingularMap(_) => NON_CONVERGED,
        Error::NoCertificate(_)
        | Error::NoContacts
        | Error::InfeasibleWeights(_)
        | Error::CertificateInvalid(_) => NO_CERTIFICATE,
        _ => CHECK_FAILED,
    }
}

fn fail(context: &str, e: &Error) -> u8 {
    eprintln!("error: {context}: {e}");
    exit_code(e)
}

fn seed(run: &RunConfig) -> Result<u64, u8> {
    run.effective_seed().map_err(|m| {
        eprintln!("error: {m}");
        INPUT
    })
}

fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into())
}

/// `--render` destination for item `i` of `n`.
fn render_path(run: &RunConfig, default: String, i: usize, n: usize) -> Option<PathBuf> {
    let given = run.render.as_ref()?;
    if given.is_empty() {
        return Some(PathBuf::from(format!("{default}.svg")));
    }
    let p = PathBuf::from(given);
    if n == 1 {
        return Some(p);
    }
    Some(p.with_file_name(format!("{}_{i}.svg", stem(&p))))
}

fn write_svg(path: &Path, svg: Result<String, Error>) -> u8 {
    match svg.and_then(|s| {
        std::fs::write(path, s).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }) {
        Ok(()) => OK,
        Err(e) => fail("render", &e),
    }
}

fn csv_writer() -> csv::Writer<std::io::Stdout> {
    csv::Writer::from_writer(std::io::stdout())
}

pub fn distance(run: &RunConfig, files: &[PathBuf], grunbaum: bool, no_maxvol: bool) -> u8 {
    if files.len() % 2 != 0 {
        eprintln!(
            "error: distance takes polygon files in K L pairs, got {} files",
            files.len()
        );
        return INPUT;
    }
    let seed = match seed(run) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let mut pairs = Vec::new();
    for pair in files.chunks(2) {
        match (io::read_polygon(&pair[0]), io::read_polygon(&pair[1])) {
            (Ok(k), Ok(l)) => pairs.push((k, l)),
            (Err(e), _) => return fail(&pair[0].display().to_string(), &e),
            (_, Err(e)) => return fail(&pair[1].display().to_string(), &e),
        }
    }
    let n = pairs.len();
    // one pair: parallel restarts; a batch: parallel over pairs
    let (outer, inner) = if n == 1 {
        (Execution::Sequential, Execution::Parallel)
    } else {
        (Execution::Parallel, Execution::Sequential)
    };
    let opts = DistanceOptions {
        restarts: run.restarts,
        seed,
        max_evals: run.max_iters,
        maxvol_start: !no_maxvol,
        execution: inner,
        ..DistanceOptions::default()
    };
    let results = map_indexed(n, outer, |i| {
        let (k, l) = &pairs[i];
        let start = Instant::now();
        let res = if grunbaum {
            grunbaum_distance(k, l, &opts)
        } else {
            banach_mazur_distance(k, l, &opts)
        };
        (res, start.elapsed().as_secs_f64())
    });
    let mut code = OK;
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for (i, (res, secs)) in results.into_iter().enumerate() {
        let (kf, lf) = (&files[2 * i], &files[2 * i + 1]);
        match res {
            Ok(mut report) => {
                let (k, l) = &pairs[i];
                report.verified = certify_sandwich_with(
                    k,
                    l,
                    &report.map,
                    report.shift_inner,
                    report.shift_outer,
                    report.r,
                    report.sign,
                    run.cert_tol,
                );
                if !report.verified {
                    code = code.max(NON_CONVERGED);
                }
                let record = DistanceRecord {
                    k: k.clone(),
                    l: l.clone(),
                    report,
                };
                if let Some(p) = render_path(run, format!("{}_{}", stem(kf), stem(lf)), i, n) {
                    code = code.max(write_svg(&p, record.svg()));
                }
                rows.push((kf, lf, Some(record.report.clone()), secs));
                records.push(record);
            }
            Err(e) => {
                code = code.max(fail(&format!("{} {}", kf.display(), lf.display()), &e));
                rows.push((kf, lf, None, secs));
            }
        }
    }
    match run.format {
        Format::Json if n == 1 => {
            if let Some(r) = records.first() {
                print(&io::to_json(r));
            }
        }
        Format::Json => print(&io::to_json(&records)),
        Format::Csv => {
            let mut w = csv_writer();
            let _ = w.write_record([
                "k_file",
                "l_file",
                "mode",
                "r",
                "sign",
                "verified",
                "restarts_used",
                "seconds",
            ]);
            let mode = if grunbaum {
                Mode::Grunbaum
            } else {
                Mode::BanachMazur
            };
            for (kf, lf, rep, secs) in rows {
                let mode =
                    serde_json::to_value(rep.as_ref().map_or(mode, |r| r.mode)).unwrap_or_default();
                let mode = mode.as_str().unwrap_or_default().to_string();
                let (r, sign, verified, used) = match rep {
                    Some(r) => (
                        r.r.to_string(),
                        r.sign.to_string(),
                        r.verified.to_string(),
                        r.restarts_used.to_string(),
                    ),
                    None => (String::new(), String::new(), "false".into(), "0".into()),
                };
                let _ = w.write_record([
                    kf.display().to_string(),
                    lf.display().to_string(),
                    mode,
                    r,
                    sign,
                    verified,
                    used,
                    format!("{secs:.3}"),
                ]);
            }
            let _ = w.flush();
        }
    }
    code
}

fn john_record(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    no_maxvol: bool,
    cert_tol: f64,
) -> Result<JohnRecord, Error> {
    let map = if no_maxvol {
        AffineMap::IDENTITY
    } else {
        max_volume_position(k, l)?.map
    };
    let placed = apply_affine(&map, k)?;
    let (_, certificate) = recenter_search(&placed, l)?;
    let check = check_john_certificate_with(&certificate, cert_tol);
    let glmp = check_glmp(&placed, l, &certificate)?;
    Ok(JohnRecord {
        k: k.clone(),
        l: l.clone(),
        map,
        certificate,
        check,
        glmp,
    })
}

pub fn john(run: &RunConfig, kf: &Path, lf: &Path, no_maxvol: bool) -> u8 {
    let (k, l) = match (io::read_polygon(kf), io::read_polygon(lf)) {
        (Ok(k), Ok(l)) => (k, l),
        (Err(e), _) => return fail(&kf.display().to_string(), &e),
        (_, Err(e)) => return fail(&lf.display().to_string(), &e),
    };
    let rec = match john_record(&k, &l, no_maxvol, run.cert_tol) {
        Ok(r) => r,
        Err(e) => return fail("john", &e),
    };
    let c = &rec.check;
    eprintln!("pairs           {}", c.m);
    eprintln!("sum a_i         {:.12}", c.weight_sum);
    eprintln!("min a_i         {:.3e}", c.min_weight);
    eprintln!("identity        {:.3e}", c.residual_identity);
    eprintln!("sum a_i u_i     {:.3e}", c.residual_u);
    eprintln!("sum a_i v_i     {:.3e}", c.residual_v);
    eprintln!("<u_i, v_i> = 1  {:.3e}", c.residual_pairing);
    eprintln!("L in -2K slack  {:.3e}", rec.glmp.worst_slack);
    if let Ok((kk, ll)) = rec.frame() {
        if let Ok(pairs) = extract_contacts(&kk, &ll, run.tol) {
            eprintln!("contact rays    {}", pairs.len());
        }
    }
    match run.format {
        Format::Json => print(&io::to_json(&rec)),
        Format::Csv => {
            let mut w = csv_writer();
            let _ = w.write_record([
                "k_file",
                "l_file",
                "m",
                "weight_sum",
                "worst_residual",
                "pass",
                "glmp_holds",
            ]);
            let _ = w.write_record([
                kf.display().to_string(),
                lf.display().to_string(),
                c.m.to_string(),
                c.weight_sum.to_string(),
                c.worst.to_string(),
                c.pass.to_string(),
                rec.glmp.holds.to_string(),
            ]);
            let _ = w.flush();
        }
    }
    let mut code = if c.pass { OK } else { NO_CERTIFICATE };
    if let Some(p) = render_path(run, format!("{}_{}_john", stem(kf), stem(lf)), 0, 1) {
        code = code.max(write_svg(&p, rec.svg()));
    }
    code
}

pub fn replay(run: &RunConfig, files: &[PathBuf]) -> u8 {
    let mut code = OK;
    let mut reports: Vec<(PathBuf, ScenarioReport)> = Vec::new();
    for (i, f) in files.iter().enumerate() {
        let outcome = io::read_json::<ScenarioSpec>(f).and_then(|spec| run_scenario(&spec));
        match outcome {
            Ok(rep) => {
                if !rep.pass {
                    for a in rep.failures() {
                        eprintln!("FAIL {}: {} (residual {:e})", rep.id, a.name, a.residual);
                    }
                    code = code.max(CHECK_FAILED);
                }
                if let Some(p) = render_path(run, stem(f), i, files.len()) {
                    code = code.max(write_svg(&p, Ok(rep.svg())));
                }
                reports.push((f.clone(), rep));
            }
            Err(e) => code = code.max(fail(&f.display().to_string(), &e)),
        }
    }
    match run.format {
        Format::Json if files.len() == 1 => {
            if let Some((_, r)) = reports.first() {
                print(&io::to_json(r));
            }
        }
        Format::Json => print(&io::to_json(
            &reports.iter().map(|r| &r.1).collect::<Vec<_>>(),
        )),
        Format::Csv => {
            let mut w = csv_writer();
            let _ = w.write_record(["file", "id", "assertion", "residual", "pass"]);
            for (f, rep) in &reports {
                for a in &rep.assertions {
                    let _ = w.write_record([
                        f.display().to_string(),
                        rep.id.clone(),
                        a.name.clone(),
                        a.residual.to_string(),
                        a.pass.to_string(),
                    ]);
                }
            }
            let _ = w.flush();
        }
    }
    code
}

pub fn search(
    run: &RunConfig,
    budget: usize,
    pairs: Vec<(
        bmforge_core::generate::PolygonClass,
        bmforge_core::generate::PolygonClass,
    )>,
    top: usize,
) -> u8 {
    let seed = match seed(run) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let mut config = SearchConfig {
        seed,
        restarts: run.restarts.min(16),
        ..SearchConfig::default()
    };
    if !pairs.is_empty() {
        config.classes = pairs;
    }
    let found = extremal_pair_search(&config, budget);
    let best = found
        .iter()
        .map(|c| c.estimate)
        .fold(f64::NEG_INFINITY, f64::max);
    eprintln!(
        "{} of {budget} pairs evaluated, largest estimate {best:.6}",
        found.len()
    );
    let shown: Vec<_> = found.into_iter().take(top).collect();
    match run.format {
        Format::Json => print(&io::to_json(&shown)),
        Format::Csv => {
            let mut w = csv_writer();
            let _ = w.write_record([
                "index",
                "estimate",
                "sign",
                "verified",
                "involves_triangle",
                "flagged",
            ]);
            for c in &shown {
                let _ = w.write_record([
                    c.index.to_string(),
                    c.estimate.to_string(),
                    c.sign.to_string(),
                    c.verified.to_string(),
                    c.involves_triangle.to_string(),
                    c.flagged.to_string(),
                ]);
            }
            let _ = w.flush();
        }
    }
    if shown.iter().any(|c| !c.verified) {
        NON_CONVERGED
    } else {
        OK
    }
}

pub fn render(report: &Path, out: Option<PathBuf>) -> u8 {
    let parsed = match io::read_json::<AnyReport>(report) {
        Ok(r) => r,
        Err(e) => return fail(&report.display().to_string(), &e),
    };
    let out = out.unwrap_or_else(|| report.with_extension("svg"));
    write_svg(&out, parsed.svg())
}
