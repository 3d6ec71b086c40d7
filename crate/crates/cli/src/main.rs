use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use pf_core::approx::{hpoly_norm, mahler_check, match_factors, pair_roots};
use pf_core::blowup::monomialize_discriminant;
use pf_core::field::rat_to_f64;
use pf_core::io::{self, Input};
use pf_core::npe::{aj_roots, npe_factor_joint, npe_factor_seeded};
use pf_core::rank::{example_gabrielov, example_osgood, kernel_search, prepare_morphism, rank_report, Morphism};
use pf_core::registry::{det_strategies, kernel_solvers};
use pf_core::weierstrass::discriminant_with;
use pf_core::{ErrorClass, Gq, HPoly, MonicPoly, PfError, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Factor,
    AjRoots,
    Disc,
    Prep,
    Rank,
    Kernel,
    ResolveDisc,
    PairRoots,
    MatchFactors,
    NormCheck,
    Examples,
}

/// Factorization, resolution and rank tools for power series germs.
#[derive(Parser, Debug)]
#[command(name = "pf", version)]
struct Cli {
    verb: Verb,
    /// Input document.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (a directory for `examples`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 12)]
    cap: u32,
    /// Degree bound for kernel relations.
    #[arg(long = "degX", default_value_t = 4)]
    deg_x: u32,
    /// Truncation of the source ring in kernel searches.
    #[arg(long = "capU", default_value_t = 10)]
    cap_u: u32,
    /// Overridden by PF_SEED.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "maxDepth", default_value_t = 32)]
    max_depth: usize,
    #[arg(long, default_value = "modular")]
    solver: String,
    #[arg(long, default_value = "berkowitz")]
    det: String,
    /// Exit 2 from `rank` when no relation is found.
    #[arg(long = "expect-relation")]
    expect_relation: bool,
}

struct Outcome {
    doc: Value,
    summary: String,
    negative: bool,
}

impl Outcome {
    fn ok(doc: Value, summary: String) -> Self {
        Outcome { doc, summary, negative: false }
    }
}

fn read_input(cli: &Cli) -> Result<Input, PfError> {
    let path = cli.input.as_ref().ok_or_else(|| PfError::InvalidInput("--in is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| PfError::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    io::parse_input(&text)
}

fn want_monic(cli: &Cli) -> Result<MonicPoly, PfError> {
    match read_input(cli)? {
        Input::Monic(m) => Ok(io::monic_from(&m)?.truncate(cli.cap.min(m.cap))),
        _ => Err(PfError::InvalidInput("expected a monic document".into())),
    }
}

fn want_morphism(cli: &Cli) -> Result<Morphism, PfError> {
    match read_input(cli)? {
        Input::Morphism(m) => io::morphism_from(&m),
        _ => Err(PfError::InvalidInput("expected a morphism document".into())),
    }
}

fn want_pair(cli: &Cli) -> Result<(MonicPoly, MonicPoly), PfError> {
    match read_input(cli)? {
        Input::Pair { p, q } => {
            let cap = cli.cap.min(p.cap).min(q.cap);
            Ok((io::monic_from(&p)?.truncate(cap), io::monic_from(&q)?.truncate(cap)))
        }
        _ => Err(PfError::InvalidInput("expected a pair document".into())),
    }
}

fn seed(cli: &Cli) -> Result<u64, PfError> {
    match std::env::var("PF_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| PfError::InvalidInput(format!("PF_SEED '{s}' is not an integer"))),
        Err(_) => Ok(cli.seed),
    }
}

fn parse_rho(s: &str) -> Result<f64, PfError> {
    let r = match Gq::parse_rational(s) {
        Some(r) => rat_to_f64(&r),
        None => s.trim().parse::<f64>().map_err(|_| PfError::InvalidInput(format!("bad rho '{s}'")))?,
    };
    if !(r > 0.0 && r.is_finite()) {
        return Err(PfError::InvalidInput(format!("rho must be positive, got {s}")));
    }
    Ok(r)
}

fn series_list(fs: &[TruncatedSeries]) -> Vec<io::SeriesJson> {
    fs.iter().map(io::series_json).collect()
}

fn run(cli: &Cli) -> Result<Outcome, PfError> {
    let dets = det_strategies();
    let det = dets.get(&cli.det)?;
    let solvers = kernel_solvers();
    let solver = solvers.get(&cli.solver)?;
    match cli.verb {
        Verb::Factor => {
            let p = want_monic(cli)?;
            let f = npe_factor_seeded(&p, cli.cap, seed(cli)?)?;
            let degrees: Vec<usize> = f.orbits.iter().map(|o| o.len()).collect();
            let doc = io::document(
                "factorization",
                json!({
                    "cap": f.cap,
                    "gamma": io::gamma_json(&f.gamma),
                    "h": f.h.to_string(),
                    "roots": f.roots.iter().map(io::vgamma_json).collect::<Vec<_>>(),
                    "orbits": f.orbits,
                    "factorDegrees": degrees,
                }),
            );
            let summary = format!(
                "{} irreducible factor(s) of degrees {:?} over an element of degree {}",
                degrees.len(),
                degrees,
                f.gamma.degree()
            );
            Ok(Outcome::ok(doc, summary))
        }
        Verb::AjRoots => {
            let p = want_monic(cli)?;
            let roots = aj_roots(&p, cli.cap)?;
            let ram = roots.first().map(|r| r.ram).unwrap_or(1);
            let doc = io::document(
                "aj-roots",
                json!({"cap": p.cap(), "roots": roots.iter().map(io::ramified_json).collect::<Vec<_>>()}),
            );
            Ok(Outcome::ok(doc, format!("{} root(s) in x_i = u_i^{}", roots.len(), ram)))
        }
        Verb::Disc => {
            let p = want_monic(cli)?;
            let d = discriminant_with(&p, det);
            let summary = match d.order() {
                Some(k) => format!("discriminant of order {k}"),
                None => format!("discriminant zero up to cap {}", d.cap()),
            };
            Ok(Outcome::ok(io::series_doc(&d), summary))
        }
        Verb::Prep => {
            let phi = want_morphism(cli)?;
            let pr = prepare_morphism(&phi, det)?;
            let doc = io::document(
                "preparation",
                json!({
                    "log": pr.log.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "form": format!("{:?}", pr.form),
                    "morphism": io::morphism_json(&pr.phi),
                }),
            );
            Ok(Outcome::ok(doc, format!("{:?} after {} step(s)", pr.form, pr.log.len())))
        }
        Verb::Rank => {
            let phi = want_morphism(cli)?;
            let r = rank_report(&phi, cli.deg_x, cli.cap_u, solver, det)?;
            let doc = io::document(
                "rank",
                json!({
                    "genericRank": r.generic,
                    "degX": r.deg_x,
                    "capU": r.cap_u,
                    "kernelBasis": series_list(&r.kernel_basis),
                    "evidence": r.evidence(),
                }),
            );
            let negative = cli.expect_relation && r.kernel_basis.is_empty();
            Ok(Outcome { doc, summary: format!("generic rank {}; {}", r.generic, r.evidence()), negative })
        }
        Verb::Kernel => {
            let phi = want_morphism(cli)?;
            let basis = kernel_search(&phi, cli.deg_x, cli.cap_u, solver)?;
            let evidence = if basis.is_empty() {
                format!("no relation up to degree {} (capU {})", cli.deg_x, cli.cap_u)
            } else {
                format!("{} independent relation(s) up to degree {} (capU {})", basis.len(), cli.deg_x, cli.cap_u)
            };
            let doc = io::document(
                "kernel",
                json!({"degX": cli.deg_x, "capU": cli.cap_u, "basis": series_list(&basis), "evidence": evidence}),
            );
            Ok(Outcome { doc, negative: basis.is_empty(), summary: evidence })
        }
        Verb::ResolveDisc => {
            let delta = match read_input(cli)? {
                Input::Series(s) => io::series_from(&s)?,
                Input::Monic(m) => {
                    let p = io::monic_from(&m)?.truncate(cli.cap.min(m.cap));
                    discriminant_with(&p, det)
                }
                _ => return Err(PfError::InvalidInput("expected a series or monic document".into())),
            };
            let (tree, cert) = monomialize_discriminant(&delta, cli.max_depth)?;
            let doc = io::document("resolution", json!({"tree": tree.to_json(), "certificate": cert.to_json()}));
            let summary = format!(
                "{} blow-up(s), {} fiber point(s), certificate {}",
                tree.blowups(),
                cert.points.len(),
                if cert.valid() { "valid" } else { "FAILED" }
            );
            Ok(Outcome { doc, summary, negative: !cert.valid() })
        }
        Verb::PairRoots => {
            let (p, q) = want_pair(cli)?;
            pf_core::approx::perturbation_threshold(&p, &q)?;
            let mut fs = npe_factor_joint(&[&p, &q], cli.cap, seed(cli)?)?;
            let fq = fs.pop().unwrap();
            let fp = fs.pop().unwrap();
            let r = pair_roots(&p, &q, &fp.roots, &fq.roots)?;
            let summary = format!("{} root pair(s), threshold {}", r.pairs.len(), r.to_json()["threshold"]);
            Ok(Outcome::ok(io::document("root-pairing", r.to_json()), summary))
        }
        Verb::MatchFactors => {
            let (p, q) = want_pair(cli)?;
            let m = match_factors(&p, &q, cli.cap, seed(cli)?)?;
            let summary = format!("{} factor pair(s), threshold {}", m.factors.len(), m.to_json()["threshold"]);
            Ok(Outcome::ok(io::document("factor-matching", m.to_json()), summary))
        }
        Verb::NormCheck => {
            let (h, b, rho) = match read_input(cli)? {
                Input::FormPair { h, b, rho } => (io::hpoly_from(&h)?, io::hpoly_from(&b)?, rho),
                _ => return Err(PfError::InvalidInput("expected a form-pair document".into())),
            };
            let rho = parse_rho(rho.as_deref().unwrap_or("1"))?;
            let r = mahler_check(&h, &b)?;
            let doc = io::document(
                "norm-check",
                json!({
                    "rho": pf_core::approx::dec17(rho),
                    "normH": hpoly_norm(&h, rho).to_json(),
                    "normB": hpoly_norm(&b, rho).to_json(),
                    "sandwich": r.to_json(),
                }),
            );
            let ok = r.submultiplicative && r.mahler;
            let summary = format!("ratio {:.6}; sandwich {}", r.ratio, if ok { "holds" } else { "VIOLATED" });
            Ok(Outcome { doc, summary, negative: !ok })
        }
        Verb::Examples => {
            let dir = cli.out.as_ref().ok_or_else(|| PfError::InvalidInput("--out directory is required".into()))?;
            let files = write_examples(dir)?;
            Ok(Outcome::ok(Value::Null, format!("wrote {} example(s) to {}", files, dir.display())))
        }
    }
}

fn series(n: usize, cap: u32, terms: &[(&[u32], i64)]) -> TruncatedSeries {
    let mut f = TruncatedSeries::zero(n, cap);
    for (e, c) in terms {
        f.add_term(e.to_vec(), Gq::int(*c));
    }
    f
}

fn monic(n: usize, cap: u32, coeffs: &[&[(&[u32], i64)]]) -> MonicPoly {
    MonicPoly::new(coeffs.iter().map(|c| series(n, cap, c)).collect()).unwrap()
}

fn write_examples(dir: &Path) -> Result<usize, PfError> {
    let io_err = |e: std::io::Error| PfError::InvalidInput(format!("cannot write to {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let sq = monic(2, 12, &[&[], &[(&[1, 1], -1)]]);
    let y2 = monic(1, 12, &[&[], &[(&[2], -1)]]);
    let y2p = monic(1, 12, &[&[], &[(&[2], -1), (&[5], -1)]]);
    let x = HPoly::var(2, 0);
    let y = HPoly::var(2, 1);
    let docs = vec![
        ("sqrt-x1x2.json", io::monic_doc(&sq)),
        ("tougeron.json", io::monic_doc(&monic(2, 12, &[&[], &[], &[], &[(&[2, 0], -1), (&[0, 2], -1)]]))),
        ("cusp.json", io::series_doc(&series(2, 12, &[(&[0, 2], 1), (&[3, 0], -1)]))),
        ("osgood.json", io::morphism_doc(&example_osgood(14))),
        ("osgood-33.json", io::morphism_doc(&example_osgood(33))),
        ("gabrielov.json", io::morphism_doc(&example_gabrielov(64, 8)?)),
        ("perturbed.json", io::pair_doc(&y2, &y2p)),
        ("forms.json", io::form_pair_doc(&x.sub(&y), &x.add(&y), Some("1/2"))),
    ];
    for (name, doc) in &docs {
        std::fs::write(dir.join(name), io::render(doc)).map_err(io_err)?;
    }
    Ok(docs.len())
}

fn exit_code(c: ErrorClass) -> u8 {
    match c {
        ErrorClass::Negative => 2,
        ErrorClass::Unsupported => 3,
        ErrorClass::Input => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !out.doc.is_null() {
                let text = io::render(&out.doc);
                match &cli.out {
                    Some(path) => {
                        if let Err(e) = std::fs::write(path, text) {
                            eprintln!("error: cannot write {}: {e}", path.display());
                            return ExitCode::from(4);
                        }
                    }
                    None => print!("{text}"),
                }
            }
            if cli.out.is_some() || out.doc.is_null() {
                println!("{}", out.summary);
            } else {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(if out.negative { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
    }
}
