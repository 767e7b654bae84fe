//! `forge`: command-line front end for affine semigroups, toric ideals,
//! resolutions and the claim verification suite.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use forge_core::binomial_ideal::{
    gastinger_check, toric_ideal, BinomialIdeal, MonomialOrder, OrderDoc, StructuredMatrix,
};
use forge_core::constructors::{FamilySpec, GapSpec};
use forge_core::resolution::{betti_monomial, betti_semigroup, BettiTable, GradedFreeComplex};
use forge_core::verify::{verify_claim, verify_suite, Status, VerifyConfig, VerifyReport, CLAIM_IDS, DEFAULT_SEED};
use forge_core::{AffineSemigroup, Caps, Error, IntVec, SemigroupDoc};

#[derive(Parser)]
#[command(name = "forge", version, about = "Affine semigroups, toric ideals and their resolutions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Cap on Apéry nodes and reduction steps.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Enable Backelin-scale checks.
    #[arg(long, global = true)]
    slow: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Gap,
    Join,
    Backelin,
}

/// Where a semigroup comes from: a JSON document, a family spec file, or
/// family flags.
#[derive(Args, Clone)]
struct SemigroupArgs {
    /// Semigroup document `{"ambient_dim": r, "generators": [[..], ..]}`.
    #[arg(long)]
    semigroup: Option<PathBuf>,
    /// Family spec document, e.g. `{"family":"gap","a":[1,2],"d":[2,1],"h":1,"n":3}`.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    a: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    d: Option<Vec<i64>>,
    #[arg(long)]
    h: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Right block of a join.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    a2: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    d2: Option<Vec<i64>>,
    #[arg(long)]
    h2: Option<u32>,
    #[arg(long)]
    n2: Option<usize>,
    /// Backelin parameter r.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Args, Clone)]
struct IdealArgs {
    /// Ideal document `{"variables": [..], "degree_map": [..], "binomials": [..]}`.
    #[arg(long)]
    ideal: PathBuf,
    /// Order document `{"kind": "neg_degrevlex", "permutation": [..]}`.
    #[arg(long)]
    order: Option<PathBuf>,
    /// Order kind with the identity variable order, used when no order file
    /// is given.
    #[arg(long, default_value = "degrevlex")]
    order_kind: String,
}

#[derive(Subcommand)]
enum Command {
    /// Extremal rays, simpliciality and minimality.
    Semigroup(SemigroupArgs),
    /// Apéry set with respect to the extremal rays (or `--wrt`).
    Apery {
        #[command(flatten)]
        source: SemigroupArgs,
        /// Generator indices, 0-based.
        #[arg(long, value_delimiter = ',')]
        wrt: Option<Vec<usize>>,
    },
    /// Quasi-Frobenius elements and type.
    Qf(SemigroupArgs),
    /// Toric ideal by elimination.
    Toric(SemigroupArgs),
    /// Reduced Gröbner basis or minimal standard basis.
    Gb(IdealArgs),
    /// Minimal generators of the initial ideal.
    Initial(IdealArgs),
    /// Eagon–Northcott complex of the progression matrix.
    En(SemigroupArgs),
    /// Betti table of the semigroup ring, or of `A/in(I)` with `--ideal`.
    Betti {
        #[command(flatten)]
        source: SemigroupArgs,
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long, default_value = "degrevlex")]
        order_kind: String,
    },
    /// Join of two progressions (`--a --d --n` and `--a2 --d2 --n2`) or two
    /// semigroup documents.
    Join {
        #[command(flatten)]
        source: SemigroupArgs,
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// Quotient-dimension test of an ideal against the Apéry set.
    Gastinger {
        #[command(flatten)]
        source: SemigroupArgs,
        /// Defaults to the 2×2 minors of the progression matrix.
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// Run the claim verification suite.
    Verify {
        #[arg(long)]
        all: bool,
        /// Claim ids to run; repeatable.
        #[arg(long)]
        claim: Vec<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(format!("{}: {e}", e.code()))
        } else {
            Failure::Usage(format!("{}: {e}", e.code()))
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path, flag: &str) -> Outcome<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--{flag}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--{flag}: invalid JSON in {}: {e}", path.display())))
}

fn require<T: Clone>(v: &Option<T>, flag: &str) -> Outcome<T> {
    v.clone().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

impl SemigroupArgs {
    fn gap_spec(&self) -> Outcome<GapSpec> {
        Ok(GapSpec::new(require(&self.a, "a")?, require(&self.d, "d")?, self.h.unwrap_or(1), require(&self.n, "n")?))
    }

    fn right_spec(&self) -> Outcome<GapSpec> {
        Ok(GapSpec::new(
            require(&self.a2, "a2")?,
            require(&self.d2, "d2")?,
            self.h2.or(self.h).unwrap_or(1),
            require(&self.n2, "n2")?,
        ))
    }

    fn family_spec(&self) -> Outcome<FamilySpec> {
        if let Some(p) = &self.spec {
            return read_json(p, "spec");
        }
        match self.family {
            Some(FamilyKind::Gap) => Ok(FamilySpec::Gap(self.gap_spec()?)),
            Some(FamilyKind::Join) => Ok(FamilySpec::Join {
                left: Box::new(FamilySpec::Gap(self.gap_spec()?)),
                right: Box::new(FamilySpec::Gap(self.right_spec()?)),
            }),
            Some(FamilyKind::Backelin) => Ok(FamilySpec::Backelin { n: require(&self.n, "n")? as u64, r: require(&self.r, "r")? }),
            None => Err(Failure::Usage("need --semigroup, --spec or --family".into())),
        }
    }

    fn build(&self) -> Outcome<AffineSemigroup> {
        if let Some(p) = &self.semigroup {
            let doc: SemigroupDoc = read_json(p, "semigroup")?;
            return Ok(AffineSemigroup::from_doc(&doc)?);
        }
        Ok(self.family_spec()?.build()?)
    }

    /// The 2×n structured matrix of a progression or join family.
    fn matrix(&self) -> Outcome<StructuredMatrix> {
        match self.family_spec()? {
            FamilySpec::Gap(s) => Ok(StructuredMatrix::progression(&s)),
            FamilySpec::Join { left, right } => match (*left, *right) {
                (FamilySpec::Gap(l), FamilySpec::Gap(r)) => Ok(StructuredMatrix::join_pair(&l, &r)),
                _ => Err(Failure::Usage("--family: structured matrices need progression blocks".into())),
            },
            _ => Err(Failure::Usage("--family: structured matrices need gap or join".into())),
        }
    }
}

fn load_order(path: &Option<PathBuf>, kind: &str, names: &[String]) -> Outcome<MonomialOrder> {
    let doc = match path {
        Some(p) => read_json::<OrderDoc>(p, "order")?,
        None => OrderDoc { kind: kind.to_string(), permutation: None, boundary: None, inner: None },
    };
    MonomialOrder::from_doc(&doc, names).map_err(|e| Failure::Usage(format!("--order: {}: {e}", e.code())))
}

fn load_ideal(path: &Path) -> Outcome<BinomialIdeal> {
    let ideal: BinomialIdeal = read_json(path, "ideal")?;
    ideal.validate().map_err(|e| Failure::Usage(format!("--ideal: {}: {e}", e.code())))?;
    Ok(ideal)
}

/// Command output before formatting.
enum Output {
    Vectors(Vec<IntVec>),
    Doc(Value),
    Betti(BettiTable),
    Verify(VerifyReport),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn csv_row(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn render(out: &Output, format: Format) -> Outcome<String> {
    let mut s = String::new();
    match (out, format) {
        (Output::Vectors(v), Format::Json) => s = serde_json::to_string(v).expect("vectors"),
        (Output::Vectors(v), Format::Text) => {
            for row in v {
                let _ = writeln!(s, "({})", row.iter().map(i64::to_string).collect::<Vec<_>>().join(", "));
            }
        }
        (Output::Vectors(v), Format::Csv) => {
            for row in v {
                let _ = writeln!(s, "{}", csv_row(row));
            }
        }
        (Output::Doc(v), Format::Json) => s = serde_json::to_string(v).expect("document"),
        (Output::Doc(v), Format::Text) => s = serde_json::to_string_pretty(v).expect("document"),
        (Output::Doc(_), Format::Csv) => return Err(Failure::Usage("--format: csv is not available for this command".into())),
        (Output::Betti(t), Format::Json) => s = serde_json::to_string(t).expect("table"),
        (Output::Betti(t), Format::Text) => s = t.to_text(),
        (Output::Betti(t), Format::Csv) => {
            s.push_str("i,degree,rank\n");
            for ((i, d), r) in &t.entries {
                let _ = writeln!(s, "{i},\"{}\",{r}", csv_row(d));
            }
        }
        (Output::Verify(r), Format::Json) => s = serde_json::to_string(r).expect("report"),
        (Output::Verify(r), Format::Text) => {
            for c in &r.claims {
                for inst in &c.instances {
                    let _ = writeln!(s, "{:<18} {:<18} {}", c.id, inst.status.as_str(), inst.params);
                }
            }
        }
        (Output::Verify(r), Format::Csv) => {
            s.push_str("id,status,params\n");
            for c in &r.claims {
                for inst in &c.instances {
                    let params = inst.params.to_string().replace('"', "\"\"");
                    let _ = writeln!(s, "{},{},\"{params}\"", c.id, inst.status.as_str());
                }
            }
        }
    }
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s)
}

fn run(cli: &Cli) -> Outcome<(Output, bool)> {
    let caps = cli.cap.map(Caps::uniform).unwrap_or_default();
    let out = match &cli.command {
        Command::Semigroup(src) => {
            let g = match &src.semigroup {
                Some(p) => {
                    let doc: SemigroupDoc = read_json(p, "semigroup")?;
                    AffineSemigroup::generated_by(doc.generators)?
                }
                None => src.build()?,
            };
            let minimal = AffineSemigroup::new(g.generators().to_vec()).err().map(|e| e.to_string());
            Output::Doc(json!({
                "ambient_dim": g.ambient_dim(),
                "generators": g.generators(),
                "dimension": g.dimension(),
                "extremal_rays": g.extremal_rays(),
                "simplicial": g.is_simplicial(),
                "minimal": minimal.is_none(),
                "minimality_failure": minimal,
            }))
        }
        Command::Apery { source, wrt } => {
            let g = source.build()?;
            let ap = match wrt {
                Some(w) => g.apery_set(w, &caps)?,
                None => g.apery_extremal(&caps)?,
            };
            Output::Vectors(ap.elements)
        }
        Command::Qf(src) => {
            let qf = src.build()?.quasi_frobenius(&caps)?;
            match cli.format {
                Format::Csv => Output::Vectors(qf.qf_elements),
                _ => Output::Doc(to_value(&qf)),
            }
        }
        Command::Toric(src) => {
            let g = src.build()?;
            let names = src.matrix().ok().map(|p| p.variables);
            Output::Doc(to_value(&toric_ideal(&g, names, &caps)?))
        }
        Command::Gb(args) => {
            let ideal = load_ideal(&args.ideal)?;
            let order = load_order(&args.order, &args.order_kind, &ideal.variables)?;
            Output::Doc(to_value(&ideal.basis_ideal(&order, &caps)?))
        }
        Command::Initial(args) => {
            let ideal = load_ideal(&args.ideal)?;
            let order = load_order(&args.order, &args.order_kind, &ideal.variables)?;
            let init = ideal.initial_ideal(&order, &caps)?;
            Output::Vectors(init.iter().map(|m| m.exps().iter().map(|&e| e as i64).collect()).collect())
        }
        Command::En(src) => {
            let c = GradedFreeComplex::eagon_northcott(&src.matrix()?)?;
            Output::Doc(to_value(&c.to_doc()))
        }
        Command::Betti { source, ideal, order, order_kind } => match ideal {
            Some(p) => {
                let ideal = load_ideal(p)?;
                let order = load_order(order, order_kind, &ideal.variables)?;
                let init = ideal.initial_ideal(&order, &caps)?;
                Output::Betti(betti_monomial(&init, ideal.nvars()))
            }
            None => Output::Betti(betti_semigroup(&source.build()?, &caps)?),
        },
        Command::Join { source, left, right } => {
            let g = match (left, right) {
                (Some(l), Some(r)) => {
                    let l: SemigroupDoc = read_json(l, "left")?;
                    let r: SemigroupDoc = read_json(r, "right")?;
                    forge_core::constructors::join(&AffineSemigroup::from_doc(&l)?, &AffineSemigroup::from_doc(&r)?)?
                }
                (None, None) => FamilySpec::Join {
                    left: Box::new(FamilySpec::Gap(source.gap_spec()?)),
                    right: Box::new(FamilySpec::Gap(source.right_spec()?)),
                }
                .build()?,
                _ => return Err(Failure::Usage("--left and --right go together".into())),
            };
            Output::Doc(json!({
                "semigroup": g.to_doc(),
                "extremal_rays": g.extremal_rays(),
                "apery_size": g.apery_extremal(&caps)?.len(),
            }))
        }
        Command::Gastinger { source, ideal } => {
            let g = source.build()?;
            let j = match ideal {
                Some(p) => load_ideal(p)?,
                None => source.matrix()?.minors_2x2()?,
            };
            Output::Doc(to_value(&gastinger_check(&j, &g, &caps)?))
        }
        Command::Verify { all, claim, list } => {
            if *list {
                return Ok((Output::Doc(json!(CLAIM_IDS)), false));
            }
            let cfg = VerifyConfig { slow: cli.slow, caps, seed: cli.seed };
            let report = if *all || claim.is_empty() {
                verify_suite(&cfg)
            } else {
                let mut claims = Vec::new();
                for id in claim {
                    claims.push(
                        verify_claim(id, &cfg).ok_or_else(|| Failure::Usage(format!("--claim: unknown claim id {id}")))?,
                    );
                }
                VerifyReport { claims }
            };
            let refuted = report.claims.iter().any(|c| c.count(Status::Refuted) > 0);
            return Ok((Output::Verify(report), refuted));
        }
    };
    Ok((out, false))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli).and_then(|(out, refuted)| Ok((render(&out, cli.format)?, refuted))) {
        Ok((text, refuted)) => {
            print!("{text}");
            ExitCode::from(if refuted { 1 } else { 0 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
