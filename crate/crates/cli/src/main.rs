mod reproduce;

use std::collections::BTreeMap;
use std::process::ExitCode;

use abl_core::admissibility::{
    abelian_admissible, abelian_preadmissible, liedahl_check, n_p, preadmissible, semicyclic_admissible, tame_admissible_solvable,
    tame_supporting_set, SieveOutcome, Value, Verdict, DEFAULT_SIEVE_BOUND,
};
use abl_core::brauer::{
    crossed_product_check, schacher_adequate, splits, tamely_adequate, wild_quotient, wildly_adequate, BrauerClass, LocalDegreeProfile,
};
use abl_core::groups::{is_metacyclic, is_semicyclic, metacyclic_presentations, AbelianInvariants, FiniteGroup, SemicyclicClass};
use abl_core::{Error, MetacyclicPresentation, NumberField};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "abl", version, about = "Admissibility of finite groups over number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Number field: Q or {"poly": [c0, c1, ..., 1]}
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Args)]
struct Out {
    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, discriminant, Wang data and the places above 2
    FieldInfo {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        out: Out,
    },
    /// Places of K above a rational prime
    Decompose {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Oddly and evenly even places of K
    EvenPrimes {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        out: Out,
    },
    /// Abelian preadmissibility and admissibility
    AbelianDecide {
        #[command(flatten)]
        field: FieldArg,
        /// Cyclic factor orders, e.g. [2,8,8]
        #[arg(long)]
        abelian: String,
        #[command(flatten)]
        out: Out,
    },
    /// Metacyclic and semicyclic classification of a group
    GroupClassify {
        /// Catalog name or group JSON
        #[arg(long)]
        group: String,
        #[command(flatten)]
        out: Out,
    },
    /// Liedahl's condition for a metacyclic presentation over K
    Liedahl {
        #[command(flatten)]
        field: FieldArg,
        /// m,n,i,t
        #[arg(long)]
        pres: String,
        #[command(flatten)]
        out: Out,
    },
    /// Tame admissibility, preadmissibility and the semicyclic corollary
    TameCheck {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        out: Out,
    },
    /// Tame supporting set of rational primes
    SupportingSet {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_SIEVE_BOUND)]
        bound: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Brauer class arithmetic and adequacy of local degree profiles
    BrauerOp {
        #[command(subcommand)]
        op: BrauerOp,
        #[command(flatten)]
        out: Out,
    },
    /// N_p(K) for an odd prime p
    Np {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Run the golden suite of worked results
    ReproducePaper {
        /// Run a single item
        #[arg(long, value_parser = reproduce::ITEMS)]
        item: Option<String>,
        /// Negative control: corrupt q_v at the places above 2
        #[arg(long, hide = true, value_parser = ["qv"])]
        inject_fault: Option<String>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum BrauerOp {
    /// Normalize invariants into [0,1)
    Normalize { class: String },
    Tensor { a: String, b: String },
    Inverse { class: String },
    Power { class: String, k: u64 },
    Exponent { class: String },
    /// Does the extension with this degree profile split the class?
    Splits { profile: String, class: String },
    /// Schacher, tame and wild adequacy of a degree profile
    Adequacy { profile: String },
    WildQuotient { profile: String },
    /// Exponent and local realizability checks for a crossed product of order n
    CrossedProduct { class: String, order: u64, realizable: String },
}

/// Failure modes mapped to exit codes.
enum Fail {
    Data(String),
    Other(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidInput(_) | Error::NotPrime(_) | Error::NonZeroSum { .. } | Error::ZeroPolynomial => {
                Fail::Data(e.to_string())
            }
            _ => Fail::Other(e.to_string()),
        }
    }
}

/// What a command produced: JSON, a human report and an exit status.
struct Report {
    json: Json,
    text: String,
    code: u8,
}

impl Report {
    fn ok(json: Json, text: String) -> Self {
        Report { json, text, code: 0 }
    }

    fn verdict(v: &Verdict, json: Json, text: String) -> Self {
        Report { json, text, code: v.exit_code() as u8 }
    }
}

fn field(f: &FieldArg) -> Result<NumberField, Fail> {
    Ok(NumberField::parse(&f.field)?)
}

fn group(s: &str) -> Result<FiniteGroup, Fail> {
    Ok(FiniteGroup::parse(s)?)
}

fn verdict_text(label: &str, v: &Verdict) -> String {
    let mut s = format!("{label}: {}", v.value);
    if let Some(r) = &v.reason {
        s += &format!(" ({r})");
    }
    if !v.cites.is_empty() {
        s += &format!("\n  decided by: {}", v.cites.join(", "));
    }
    s
}

fn places_text(places: &[abl_core::LocalPlace]) -> String {
    places
        .iter()
        .map(|v| format!("  {}: e = {}, f = {}, (n_v, q_v) = ({}, {})", v.label(), v.e, v.f, v.n_v, v.q_v))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cmd: Command) -> Result<(Report, bool), Fail> {
    Ok(match cmd {
        Command::FieldInfo { field: f, out } => {
            let k = field(&f)?;
            let w = k.wang_data()?;
            let two = k.decompose_prime(2)?;
            let json = json!({
                "field": k,
                "degree": k.degree(),
                "poly_discriminant": k.poly_disc().to_string(),
                "wang": { "t": w.t, "totally_real_intersection": w.totally_real_intersection, "oddly_even_places": w.oddly_even_places },
                "places_above_2": two.iter().map(|v| v.report()).collect::<Vec<_>>(),
            });
            let text = format!(
                "K = {k}, degree {}, disc(f) = {}\nWang t = {}\nplaces above 2:\n{}",
                k.degree(),
                k.poly_disc(),
                w.t.map_or("none (2-power cyclotomic tower is cyclic)".into(), |t| t.to_string()),
                places_text(&two)
            );
            (Report::ok(json, text), out.json)
        }
        Command::Decompose { field: f, p, out } => {
            let k = field(&f)?;
            let places = k.decompose_prime(p)?;
            let ef: Vec<String> = places.iter().map(|v| format!("({},{})", v.e, v.f)).collect();
            let json = json!({ "p": p, "places": places.iter().map(|v| v.report()).collect::<Vec<_>>() });
            (Report::ok(json, format!("{p} in {k}: [{}]\n{}", ef.join(", "), places_text(&places))), out.json)
        }
        Command::EvenPrimes { field: f, out } => {
            let k = field(&f)?;
            let w = k.wang_data()?;
            let two = k.decompose_prime(2)?;
            let json = json!({ "t": w.t, "places": two.iter().map(|v| v.report()).collect::<Vec<_>>() });
            let lines: Vec<String> = two.iter().map(|v| format!("  {}: {:?}", v.label(), v.even_class)).collect();
            (Report::ok(json, format!("t = {:?}\n{}", w.t, lines.join("\n"))), out.json)
        }
        Command::AbelianDecide { field: f, abelian, out } => {
            let k = field(&f)?;
            let a = AbelianInvariants::parse(&abelian)?;
            let pre = abelian_preadmissible(&a, &k)?;
            let adm = abelian_admissible(&a, &k)?;
            let head = match adm.value {
                Value::Yes => "K-admissible".to_string(),
                Value::No if adm.cites("special-case:conditions-1-4") => "not K-admissible (special case)".to_string(),
                Value::No => "not K-admissible".to_string(),
                Value::Undecided => "undecided".to_string(),
            };
            let text = format!("{head}\n{}\n{}", verdict_text("preadmissible", &pre), verdict_text("admissible", &adm));
            let json = json!({ "abelian": a.factor_orders(), "preadmissible": pre, "admissible": adm });
            (Report::verdict(&adm, json, text), out.json)
        }
        Command::GroupClassify { group: g, out } => {
            let g = group(&g)?;
            let order = g.order() as u64;
            let meta = is_metacyclic(&g).is_some();
            let pres: Vec<String> = if meta { metacyclic_presentations(&g)?.iter().map(|p| p.to_string()).collect() } else { vec![] };
            let mut classes = BTreeMap::new();
            classes.insert("SC".to_string(), is_semicyclic(&g, SemicyclicClass::Sc)?);
            if order % 2 == 1 {
                classes.insert("SC_o".to_string(), is_semicyclic(&g, SemicyclicClass::ScO)?);
                classes.insert("SD_odd".to_string(), is_semicyclic(&g, SemicyclicClass::SdOdd)?);
            }
            for p in [2u64, 3, 5, 7, 11, 13] {
                if order > 1 && g.is_p_group(p) && p != 2 {
                    classes.insert(format!("SC_{p}"), is_semicyclic(&g, SemicyclicClass::ScP(p))?);
                }
            }
            let json = json!({
                "order": order,
                "abelian": g.is_abelian(),
                "solvable": g.is_solvable(),
                "metacyclic": meta,
                "sylow_metacyclic": g.is_sylow_metacyclic(),
                "presentations": pres,
                "semicyclic": classes,
            });
            let cls: Vec<String> = classes.iter().map(|(c, b)| format!("{c}: {}", if *b { "yes" } else { "no" })).collect();
            let text = format!(
                "order {order}, abelian {}, solvable {}\nmetacyclic: {}{}\nSylow metacyclic: {}\n{}",
                g.is_abelian(),
                g.is_solvable(),
                if meta { "yes" } else { "no" },
                if meta { format!(" ({})", pres.join(", ")) } else { String::new() },
                g.is_sylow_metacyclic(),
                cls.join("\n")
            );
            (Report::ok(json, text), out.json)
        }
        Command::Liedahl { field: f, pres, out } => {
            let k = field(&f)?;
            let p = MetacyclicPresentation::parse(&pres)?;
            let v = liedahl_check(&p, &k)?;
            let json = serde_json::to_value(&v).unwrap();
            (Report::verdict(&v, json, verdict_text(&format!("Liedahl's condition for {p} over {k}"), &v)), out.json)
        }
        Command::TameCheck { field: f, group: g, out } => {
            let k = field(&f)?;
            let g = group(&g)?;
            let tame = tame_admissible_solvable(&g, &k)?;
            let pre = preadmissible(&g, &k)?;
            let mut json = json!({ "tame": tame, "preadmissible": pre });
            let mut text = format!("{}\n{}", verdict_text("tamely admissible", &tame), verdict_text("preadmissible", &pre));
            if g.order() % 2 == 1 {
                let sc = semicyclic_admissible(&g, &k)?;
                text += &format!("\n{}", verdict_text("admissible by the semicyclic corollary", &sc));
                json["semicyclic"] = serde_json::to_value(&sc).unwrap();
            }
            (Report::verdict(&tame, json, text), out.json)
        }
        Command::SupportingSet { field: f, group: g, bound, out } => {
            let k = field(&f)?;
            let g = group(&g)?;
            match tame_supporting_set(&g, &k, &[], bound) {
                Ok(SieveOutcome::Found(s)) => {
                    let lines: Vec<String> =
                        s.entries.iter().map(|e| format!("  p = {}: {} -> {:?}", e.p, e.presentation, e.primes)).collect();
                    let text = format!("supporting primes {:?}\n{}", s.primes(), lines.join("\n"));
                    let json = json!({ "outcome": "found", "primes": s.primes(), "entries": s.entries });
                    (Report::ok(json, text), out.json)
                }
                Ok(o @ SieveOutcome::Exhausted { p, residue, modulus, bound, .. }) => {
                    let text = format!("exhausted: fewer than two primes ≡ {residue} (mod {modulus}) below {bound} for p = {p}");
                    (Report { json: serde_json::to_value(&o).unwrap(), text, code: 2 }, out.json)
                }
                Err(Error::NotMetacyclic) => {
                    let text = "no supporting set: a Sylow subgroup is not metacyclic".to_string();
                    (Report { json: json!({ "outcome": "not-sylow-metacyclic" }), text, code: 1 }, out.json)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::BrauerOp { op, out } => (brauer(op)?, out.json),
        Command::Np { field: f, p, out } => {
            let k = field(&f)?;
            let n = n_p(&k, p)?;
            (Report::ok(json!({ "p": p, "N_p": n }), format!("N_{p}(K) = {n}")), out.json)
        }
        Command::ReproducePaper { item, inject_fault, out } => (reproduce::run(item.as_deref(), inject_fault.is_some())?, out.json),
    })
}

fn class(s: &str) -> Result<BrauerClass, Fail> {
    Ok(BrauerClass::parse(s)?)
}

fn profile(s: &str) -> Result<LocalDegreeProfile, Fail> {
    Ok(LocalDegreeProfile::parse(s)?)
}

fn brauer(op: BrauerOp) -> Result<Report, Fail> {
    let show = |c: &BrauerClass| {
        let json = c.to_json();
        Report::ok(json.clone(), json.to_string())
    };
    Ok(match op {
        BrauerOp::Normalize { class: c } => show(&class(&c)?),
        BrauerOp::Tensor { a, b } => show(&class(&a)?.tensor(&class(&b)?)),
        BrauerOp::Inverse { class: c } => show(&class(&c)?.inverse()),
        BrauerOp::Power { class: c, k } => show(&class(&c)?.power(k)),
        BrauerOp::Exponent { class: c } => {
            let e = class(&c)?.exponent();
            Report::ok(json!({ "exponent": e }), format!("exponent {e}"))
        }
        BrauerOp::Splits { profile: p, class: c } => {
            let s = splits(&profile(&p)?, &class(&c)?)?;
            Report { json: json!({ "splits": s }), text: if s { "splits".into() } else { "does not split".into() }, code: if s { 0 } else { 1 } }
        }
        BrauerOp::Adequacy { profile: p } => {
            let p = profile(&p)?;
            let (s, t, w) = (schacher_adequate(&p), tamely_adequate(&p), wildly_adequate(&p));
            let line = |name: &str, a: &abl_core::brauer::Adequacy| format!("{name}: {} [{}]", if a.adequate { "yes" } else { "no" }, a.cite);
            let text = [line("adequate", &s), line("tamely adequate", &t), line("wildly adequate", &w)].join("\n");
            Report { json: json!({ "schacher": s, "tame": t, "wild": w }), text, code: if s.adequate { 0 } else { 1 } }
        }
        BrauerOp::WildQuotient { profile: p } => {
            let q = wild_quotient(&profile(&p)?);
            Report::ok(json!(q), format!("{q:?}"))
        }
        BrauerOp::CrossedProduct { class: c, order, realizable } => {
            let real: BTreeMap<String, Vec<u64>> = serde_json::from_str(&realizable)
                .map_err(|e| Fail::Data(format!("realizable degrees: {e}")))?;
            let r = crossed_product_check(&class(&c)?, order, &real)?;
            let text = format!("crossed product of order {order}: {} (exponent {}, missing {:?})", r.ok, r.exponent, r.missing);
            Report { json: serde_json::to_value(&r).unwrap(), text, code: if r.ok { 0 } else { 1 } }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((r, as_json)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&r.json).unwrap());
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(Fail::Data(msg)) => {
            eprintln!("abl: {msg}");
            ExitCode::from(EXIT_DATA)
        }
        Err(Fail::Other(msg)) => {
            // precision or size limits: no decision
            eprintln!("abl: undecided: {msg}");
            ExitCode::from(2)
        }
    }
}
