//! `affcc`: command-line front end. JSON goes to stdout, a short summary to
//! stderr. Exit codes: 0 pass, 1 verification mismatch, 2 input error,
//! 3 internal invariant breach.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use affine_cc::cartan::{classify, CartanInput, CartanTriple};
use affine_cc::ccmod::{build_label, canonical_decomposition, oracle_f_eta, ExtOracle, GenericContext};
use affine_cc::cluster::{bfs_explore, principal_data, ExtMatrix, Seed};
use affine_cc::modrep::{enumerate_submodules, f_poly_oracle, Family, FqModule, OracleConfig};
use affine_cc::rootsys::{default_tubes, enumerate_real_schur, orbit_kind, OrbitKind, SchurRootLabel};
use affine_cc::verify::verify_sweep;
use affine_cc::{fixtures, Error};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "affcc", version, about = "Cluster variables, CC functions and generic bases for affine Cartan triples")]
struct Cli {
    /// Shipped triple: b3tilde, kronecker, twisted-a2, a2tilde, c2tilde.
    #[arg(long, global = true, conflicts_with = "input")]
    fixture: Option<String>,
    /// JSON file {"cartan": [[..]], "symmetrizer": [..], "orientation": [[i, j], ..]}.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Primes for point counting, e.g. 2,3,5,7.
    #[arg(long, global = true, value_delimiter = ',')]
    qlist: Option<Vec<u64>>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type, null root and admissible extended vertices.
    Classify,
    /// Real Schur roots of orbit depth at most --depth, plus tube roots.
    Roots {
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// A cluster variable with principal coefficients, by mutation word or by root label.
    Ccvar {
        /// 1-indexed mutation word, e.g. "1 2 3".
        #[arg(long, conflicts_with = "root")]
        path: Option<String>,
        /// Root label: P<l>:<r>, I<l>:<r> or T<i>:<level>:<slot>.
        #[arg(long)]
        root: Option<String>,
    },
    /// Cluster variables within --depth mutations of the initial seed.
    Explore {
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Module-side CC functions against exchange-graph variables.
    Verify {
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Generic CC function of an extended g-vector (length n or 2n).
    Generic {
        #[arg(long, allow_hyphen_values = true)]
        gvec: String,
    },
    /// Canonical decomposition of a rank vector.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        rank: String,
    },
    /// Point counts of quiver Grassmannians.
    Oracle {
        /// Module JSON file; counts every subrank over its field.
        #[arg(long, requires = "grassmannian")]
        module: Option<PathBuf>,
        #[arg(long)]
        grassmannian: bool,
        /// Rank vector; interpolates the F-polynomial of a rigid (or --generic) module.
        #[arg(long, conflicts_with = "module")]
        rank: Option<String>,
        #[arg(long)]
        generic: bool,
    },
}

enum Failure {
    Mismatch(String),
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_)
            | Error::DecompositionNotFound(_)
            | Error::InterpolationInconsistent(_)
            | Error::NotLaurent(_)
            | Error::NotHomogeneous(_)
            | Error::NegativeRank(_)
            | Error::NotLocallyFreeResult(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, String), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.json;
    let (out, code) = match run(&cli) {
        Ok((v, summary)) => (Some(v), {
            eprintln!("{summary}");
            0
        }),
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            (None, 1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            (None, 2)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant breach: {m}");
            (None, 3)
        }
    };
    if let Some(v) = out {
        let s = if pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
        // a closed pipe is not an error for a one-shot report
        let _ = writeln!(std::io::stdout(), "{}", s.expect("serializable"));
    }
    eprintln!("seed {}", cli.seed);
    ExitCode::from(code)
}

fn load(cli: &Cli) -> Result<(CartanTriple, Vec<usize>), Failure> {
    match (&cli.fixture, &cli.input) {
        (Some(name), _) => {
            let t = fixtures::by_name(name)
                .ok_or_else(|| Failure::Input(format!("unknown fixture '{name}' (known: {})", fixtures::NAMES.join(", "))))?;
            let n = t.n();
            Ok((t, (0..n).collect()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let inp: CartanInput = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(CartanTriple::from_input(&inp)?)
        }
        (None, None) => Err(Failure::Input("give --fixture NAME or --input FILE".into())),
    }
}

fn ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<i64>().map_err(|_| Failure::Input(format!("'{x}' is not an integer"))))
        .collect()
}

fn arity(v: &[i64], allowed: &[usize]) -> Result<(), Failure> {
    if allowed.contains(&v.len()) {
        Ok(())
    } else {
        Err(Failure::Input(format!("expected {} entries, got {}", allowed.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" or "), v.len())))
    }
}

fn config(cli: &Cli) -> Result<OracleConfig, Failure> {
    let mut cfg = OracleConfig { seed: cli.seed, ..OracleConfig::default() };
    if let Some(q) = &cli.qlist {
        if let Some(bad) = q.iter().find(|&&p| !affine_cc::modrep::is_prime(p)) {
            return Err(Failure::Input(format!("--qlist entry {bad} is not prime")));
        }
        cfg.primes = q.clone();
    }
    Ok(cfg)
}

fn one_indexed(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn run(cli: &Cli) -> Outcome {
    let (t, labels) = load(cli)?;
    let relabel = labels.iter().enumerate().any(|(i, &l)| i != l);
    let note = if relabel { format!(" (vertices relabeled: new i is input {:?}[i])", one_indexed(&labels)) } else { String::new() };
    let n = t.n();
    match &cli.cmd {
        Cmd::Classify => {
            let kind = classify(t.c(), t.d());
            let mut v = json!({ "kind": format!("{kind:?}"), "n": n, "labels": one_indexed(&labels), "exchange_matrix": t.b() });
            if t.require_affine().is_ok() {
                v["null_root"] = json!(t.null_root()?);
                v["extended_vertices"] = json!(one_indexed(&t.admissible_extended_vertices()));
            }
            Ok((v, format!("{kind:?} type, rank {n}{note}")))
        }
        Cmd::Roots { depth } => {
            let roots = enumerate_real_schur(&t, *depth)?;
            let tubes = default_tubes(&t)?;
            let list: Vec<Value> = roots
                .iter()
                .map(|(r, l)| {
                    let orbit = match orbit_kind(&t, r) {
                        OrbitKind::Finite(p) => json!(p),
                        OrbitKind::Infinite => json!("infinite"),
                    };
                    json!({ "label": l.to_string(), "rank": r, "orbit": orbit })
                })
                .collect();
            let periods: Vec<usize> = tubes.tubes.iter().map(|x| x.period).collect();
            let v = json!({ "roots": list, "tube_periods": periods, "extended_vertex": tubes.extended_vertex.map(|k| k + 1) });
            Ok((v, format!("{} real Schur roots, tube periods {periods:?}{note}", roots.len())))
        }
        Cmd::Ccvar { path, root } => match (path, root) {
            (Some(p), _) => {
                let word: Vec<usize> = ints(p)?
                    .into_iter()
                    .map(|k| if k >= 1 && k as usize <= n { Ok(k as usize - 1) } else { Err(Failure::Input(format!("vertex {k} out of range 1..={n}"))) })
                    .collect::<Result<_, _>>()?;
                let last = *word.last().ok_or_else(|| Failure::Input("empty mutation word".into()))?;
                let s = Seed::initial(ExtMatrix::principal(t.b())).mutate_word(&word)?;
                let data = principal_data(&s.vars[last], t.b())?;
                let mut v = serde_json::to_value(&data).expect("serializable");
                v["f"] = data.f().to_json();
                v["word"] = json!(one_indexed(&word));
                Ok((v, format!("d-vector {:?}, g-vector {:?}", data.d, data.g)))
            }
            (None, Some(r)) => {
                let label: SchurRootLabel = r.parse()?;
                let tubes = default_tubes(&t)?;
                let d = build_label(&t, label, &tubes)?;
                d.check_invariants()?;
                Ok((d.to_json(), format!("{label}: rank {:?} after {} reflections", d.rank, d.reflections)))
            }
            (None, None) => Err(Failure::Input("give --path or --root".into())),
        },
        Cmd::Explore { depth } => {
            let vars = bfs_explore(&t, *depth)?;
            let list: Vec<Value> = vars
                .values()
                .map(|d| {
                    let mut v = serde_json::to_value(d).expect("serializable");
                    v["f"] = d.f().to_json();
                    v
                })
                .collect();
            Ok((json!({ "variables": list }), format!("{} cluster variables within {depth} mutations", list.len())))
        }
        Cmd::Verify { depth } => {
            let rep = verify_sweep(&t, *depth)?;
            let mut v = serde_json::to_value(&rep).expect("serializable");
            let mut oracle_bad = Vec::new();
            if cli.qlist.is_some() {
                let cfg = config(cli)?;
                let (mut agreed, mut skipped) = (0, 0);
                for rec in &rep.records {
                    let ranks: Vec<usize> = rec.rank.iter().map(|&x| x as usize).collect();
                    match f_poly_oracle(&t, &ranks, Family::Rigid, &cfg) {
                        Ok(o) if o.f.to_json() == rec.f_ccmod => agreed += 1,
                        Ok(_) => oracle_bad.push(rec.label.clone()),
                        Err(Error::TooLarge(_)) => skipped += 1,
                        Err(e) => return Err(e.into()),
                    }
                }
                v["oracle"] = json!({ "agreed": agreed, "skipped": skipped, "mismatched": oracle_bad });
            }
            let s = &rep.summary;
            let summary = format!(
                "{}/{} roots equal ({} mismatched, {} missing), {} builder reflections, {} seeds",
                s.equal, s.total, s.mismatched, s.missing, s.reflections, s.seeds_visited
            );
            if !rep.passed() || !oracle_bad.is_empty() {
                let _ = writeln!(std::io::stdout(), "{v}");
                return Err(Failure::Mismatch(summary));
            }
            Ok((v, summary))
        }
        Cmd::Generic { gvec } => {
            let g = ints(gvec)?;
            arity(&g, &[n, 2 * n])?;
            let mat = if g.len() == n { ExtMatrix::coefficient_free(t.b()) } else { ExtMatrix::principal(t.b()) };
            let f_eta = oracle_f_eta(&t, &config(cli)?)?;
            let mut ctx = GenericContext::new(&t, f_eta, cli.seed)?;
            let gen = ctx.generic_cc(&g, &mat)?;
            let mut v = serde_json::to_value(&gen).expect("serializable");
            v["f"] = gen.f.to_json();
            v["x"] = gen.x.to_json();
            let summary = format!("v = {:?}, {} eta + {} real parts, {} terms", gen.v.v, gen.decomposition.m, gen.decomposition.parts.len(), gen.x.len());
            Ok((v, summary))
        }
        Cmd::Decompose { rank } => {
            let r = ints(rank)?;
            arity(&r, &[n])?;
            let mut ext = ExtOracle::new(&t, 101, cli.seed);
            let (dec, _) = canonical_decomposition(&t, &r, &mut ext, false)?;
            let parts: Vec<Value> = dec.parts.iter().map(|(r, l)| json!({ "rank": r, "label": l })).collect();
            Ok((json!({ "m": dec.m, "parts": parts }), format!("{r:?} = {} eta + {} real Schur roots", dec.m, parts.len())))
        }
        Cmd::Oracle { module, grassmannian, rank, generic } => match (module, rank) {
            (Some(path), _) => {
                let _ = grassmannian;
                let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let js: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let m = FqModule::from_json(&js)?;
                let cfg = config(cli)?;
                let mut counts = Vec::new();
                for e in subranks(&m.rank) {
                    counts.push(json!({ "e": e, "count": enumerate_submodules(&m, &e, cfg.node_budget)? }));
                }
                Ok((json!({ "p": m.p, "rank": m.rank, "counts": counts }), format!("{} subranks counted over F_{}", counts.len(), m.p)))
            }
            (None, Some(r)) => {
                let r = ints(r)?;
                arity(&r, &[n])?;
                if r.iter().any(|&x| x < 0) {
                    return Err(Failure::Input("rank entries must be nonnegative".into()));
                }
                let ranks: Vec<usize> = r.iter().map(|&x| x as usize).collect();
                let family = if *generic { Family::Generic } else { Family::Rigid };
                let rep = f_poly_oracle(&t, &ranks, family, &config(cli)?)?;
                let v = json!({ "f": rep.f.to_json(), "records": rep.records, "nonneg_integer_counts": rep.nonneg_integer_counts });
                Ok((v, format!("F = {}", rep.f)))
            }
            (None, None) => Err(Failure::Input("give --module FILE --grassmannian or --rank".into())),
        },
    }
}

fn subranks(rank: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in rank {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..=r).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}
