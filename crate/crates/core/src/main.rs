//! `qarr`: build complete-bipartite line arrangements on the smooth quadric
//! in P^3 (and cones over them), resolve their defining ideals, and check the
//! computed regularity / ACM verdicts against the closed-form predictions.

use std::io::Read;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use quadric_arrangements::arrangements::{
    build_generic_star, Arrangement, ArrangementDoc, Ratio,
};
use quadric_arrangements::field::DEFAULT_PRIME;
use quadric_arrangements::report::{
    analyze, build_bipartite_in_pn, bounds_hold, caviglia_splits, grid_points, supported_case,
    ReportRow, SplitRow,
};
use quadric_arrangements::resolution::{minimal_free_resolution, BettiTable};
use quadric_arrangements::{Error, PrimeField};

const EXIT_INPUT: i32 = 1;
const EXIT_UNSUPPORTED: i32 = 2;
const EXIT_DISAGREEMENT: i32 = 3;
const EXIT_RESOURCE_CAP: i32 = 4;

#[derive(Parser)]
#[command(name = "qarr", version, about = "regularity of bipartite line arrangements on a quadric")]
struct Cli {
    /// field characteristic (odd prime, must exceed a+b)
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME, env = "QARR_P")]
    p: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// write output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the arrangement document for K_{a,b} (coned into P^n for n > 3)
    Construct {
        a: usize,
        b: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// RNG seed for --exploratory star builds
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// allow off-theorem star arrangements K_{1,b}, b >= 4, built with
        /// generic (non-quadric) directions
        #[arg(long)]
        exploratory: bool,
    },
    /// Analyze an arrangement document (file argument or standard input)
    Report { file: Option<PathBuf> },
    /// Print the Betti table of the document's defining ideal
    Betti { file: Option<PathBuf> },
    /// Sweep the (a,b) grid, compare against predictions and both bounds
    VerifyTheorems {
        #[arg(long, default_value_t = 4)]
        amax: usize,
        #[arg(long, default_value_t = 6)]
        bmax: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// worker threads for the grid sweep
        #[arg(long, env = "QARR_JOBS")]
        jobs: Option<usize>,
        /// stop after this many seconds and emit a partial report
        #[arg(long)]
        time_limit_secs: Option<u64>,
        /// sanity check: collide one ruling parameter and expect rejection
        #[arg(long)]
        inject_fault: bool,
    },
    /// Enumerate splits of K_{a1,a2} and test regularity subadditivity
    Caviglia { a1: usize, a2: usize },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let field = match PrimeField::new(cli.p) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_INPUT, &e.to_string()),
    };
    match cli.cmd {
        Cmd::Construct { a, b, n, seed, exploratory } => {
            cmd_construct(field, a, b, n, seed, exploratory, &cli.out)
        }
        Cmd::Report { file } => cmd_report(field, file, cli.format, &cli.out),
        Cmd::Betti { file } => cmd_betti(field, file, cli.format, &cli.out),
        Cmd::VerifyTheorems { amax, bmax, n, jobs, time_limit_secs, inject_fault } => {
            cmd_verify(field, amax, bmax, n, jobs, time_limit_secs, inject_fault, cli.format, &cli.out)
        }
        Cmd::Caviglia { a1, a2 } => cmd_caviglia(field, a1, a2, cli.format, &cli.out),
    }
}

fn fail(code: i32, msg: &str) -> i32 {
    eprintln!("error: {msg}");
    code
}

fn emit(out: &Option<PathBuf>, text: &str) -> i32 {
    let payload = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(path) => match std::fs::write(path, payload) {
            Ok(()) => 0,
            Err(e) => fail(EXIT_INPUT, &format!("cannot write {}: {e}", path.display())),
        },
        None => {
            print!("{payload}");
            0
        }
    }
}

fn cmd_construct(
    field: PrimeField,
    a: usize,
    b: usize,
    n: usize,
    seed: u64,
    exploratory: bool,
    out: &Option<PathBuf>,
) -> i32 {
    let arr = if supported_case(a, b, n) {
        build_bipartite_in_pn(field, a, b, n)
    } else if exploratory && a.min(b) == 1 && n == 3 {
        build_generic_star(field, a.max(b), seed)
    } else if exploratory {
        return fail(
            EXIT_UNSUPPORTED,
            &format!("exploratory mode only builds generic stars K_{{1,b}} in P^3, not K_{{{a},{b}}} in P^{n}"),
        );
    } else {
        return fail(
            EXIT_UNSUPPORTED,
            &format!(
                "K_{{{a},{b}}} in P^{n} falls in an omitted case (covered: b <= 2, or 2 <= a and b <= 3, \
                 or 3 <= a, plus (1,3) in P^3); pass --exploratory for a generic star"
            ),
        );
    };
    let arr = match arr {
        Ok(x) => x,
        Err(e) => return fail(EXIT_INPUT, &e.to_string()),
    };
    let doc = arr.to_document();
    emit(out, &serde_json::to_string_pretty(&doc).expect("serializable"))
}

fn read_document(field: PrimeField, file: Option<PathBuf>) -> Result<Arrangement, String> {
    let raw = match file {
        Some(path) => std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
            buf
        }
    };
    let doc: ArrangementDoc = serde_json::from_str(&raw).map_err(|e| e.to_string())?;
    if doc.p != field.modulus() {
        return Err(format!("document modulus {} does not match --p {}", doc.p, field.modulus()));
    }
    doc.into_arrangement().map_err(|e| e.to_string())
}

fn cmd_report(field: PrimeField, file: Option<PathBuf>, format: Format, out: &Option<PathBuf>) -> i32 {
    let arr = match read_document(field, file) {
        Ok(a) => a,
        Err(msg) => return fail(EXIT_INPUT, &msg),
    };
    let analysis = match analyze(&arr) {
        Ok(a) => a,
        Err(e) => return fail(EXIT_INPUT, &e.to_string()),
    };
    let code = emit(out, &render_rows(std::slice::from_ref(&analysis.row), format));
    if code != 0 {
        return code;
    }
    if analysis.row.agree {
        0
    } else {
        fail(EXIT_DISAGREEMENT, "computed values disagree with the predictions")
    }
}

fn cmd_betti(field: PrimeField, file: Option<PathBuf>, format: Format, out: &Option<PathBuf>) -> i32 {
    let arr = match read_document(field, file) {
        Ok(a) => a,
        Err(msg) => return fail(EXIT_INPUT, &msg),
    };
    let betti = match arr.defining_ideal().and_then(|i| minimal_free_resolution(&i)) {
        Ok((_, b)) => b,
        Err(e) => return fail(EXIT_INPUT, &e.to_string()),
    };
    emit(out, &render_betti(&betti, format))
}

fn render_betti(betti: &BettiTable, format: Format) -> String {
    match format {
        Format::Csv | Format::Text => betti.to_csv(),
        Format::Json => {
            let cells: Vec<serde_json::Value> = betti
                .entries()
                .iter()
                .map(|(&(i, j), &v)| serde_json::json!({"i": i, "j": j, "beta": v}))
                .collect();
            serde_json::to_string_pretty(&cells).expect("serializable")
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn render_rows(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("serializable"),
        Format::Csv | Format::Text => {
            let mut s = String::from(
                "a,b,n,reg_betti,reg_cohomology,pd,acm_betti,acm_cohomology,expected_reg,expected_acm,agree\n",
            );
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    opt(&r.a),
                    opt(&r.b),
                    r.n,
                    r.reg_betti,
                    opt(&r.reg_cohomology),
                    r.pd,
                    r.acm_betti,
                    opt(&r.acm_cohomology),
                    opt(&r.expected_reg),
                    opt(&r.expected_acm),
                    r.agree,
                ));
            }
            s
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    field: PrimeField,
    amax: usize,
    bmax: usize,
    n: usize,
    jobs: Option<usize>,
    time_limit_secs: Option<u64>,
    inject_fault: bool,
    format: Format,
    out: &Option<PathBuf>,
) -> i32 {
    if inject_fault {
        // collide two parameters of the first ruling; the builder must refuse
        let params = (
            vec![Ratio::affine(1), Ratio::affine(1)],
            vec![Ratio::affine(0), Ratio::affine(1)],
        );
        match quadric_arrangements::arrangements::build_bipartite_on_quadric(field, 2, 2, Some(params)) {
            Err(_) => eprintln!("fault injection: degenerate build rejected as expected"),
            Ok(_) => return fail(EXIT_DISAGREEMENT, "fault injection: degenerate build was accepted"),
        }
    }

    let points = grid_points(amax, bmax, n);
    let deadline = time_limit_secs.map(|s| Instant::now() + Duration::from_secs(s));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool");

    use rayon::prelude::*;
    // rows come back in deterministic (a,b) order regardless of completion
    let results: Vec<(usize, usize, Option<Result<(ReportRow, bool), Error>>)> = pool.install(|| {
        points
            .par_iter()
            .map(|&(a, b)| {
                if deadline.is_some_and(|d| Instant::now() > d) {
                    return (a, b, None);
                }
                let one = build_bipartite_in_pn(field, a, b, n)
                    .and_then(|arr| analyze(&arr))
                    .map(|analysis| {
                        let bounds = bounds_hold(&analysis.betti, a, b);
                        (analysis.row, bounds)
                    });
                (a, b, Some(one))
            })
            .collect()
    });

    let mut rows = Vec::new();
    let mut all_agree = true;
    let mut truncated = false;
    for (a, b, res) in results {
        match res {
            None => truncated = true,
            Some(Err(e)) => return fail(EXIT_INPUT, &format!("K_{{{a},{b}}}: {e}")),
            Some(Ok((row, bounds))) => {
                all_agree &= row.agree && bounds;
                if !bounds {
                    eprintln!("K_{{{a},{b}}}: bound check failed");
                }
                rows.push(row);
            }
        }
    }
    let code = emit(out, &render_rows(&rows, format));
    if code != 0 {
        return code;
    }
    if !all_agree {
        return fail(EXIT_DISAGREEMENT, "at least one grid row disagrees with the predictions");
    }
    if truncated {
        return fail(EXIT_RESOURCE_CAP, "time limit reached; report is partial");
    }
    0
}

fn render_splits(rows: &[SplitRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("serializable"),
        Format::Csv | Format::Text => {
            let mut s = String::from(
                "b1,b2,c1,c2,reg_b,reg_c,reg_a,equality,predicted_equality,bound_holds\n",
            );
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.b1,
                    r.b2,
                    r.c1,
                    r.c2,
                    r.reg_b,
                    r.reg_c,
                    r.reg_a,
                    r.equality,
                    r.predicted_equality,
                    r.caviglia_bound_holds,
                ));
            }
            s
        }
    }
}

fn cmd_caviglia(field: PrimeField, a1: usize, a2: usize, format: Format, out: &Option<PathBuf>) -> i32 {
    let rows = match caviglia_splits(field, a1, a2) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_INPUT, &e.to_string()),
    };
    let ok = rows.iter().all(|r| r.caviglia_bound_holds && r.equality == r.predicted_equality);
    let code = emit(out, &render_splits(&rows, format));
    if code != 0 {
        return code;
    }
    if ok {
        0
    } else {
        fail(EXIT_DISAGREEMENT, "split table disagrees with the predicted equality pattern")
    }
}
