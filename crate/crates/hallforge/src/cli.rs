use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hallforge_core::deformation::{
    check_cocycle, coboundary_split_integers, iso_from_splittings, Deformation, DeformedGroup, SymmetricCocycle,
};
use hallforge_core::group::{Collector, GroupElement, NilpotentGroup};
use hallforge_core::hall_poly::{derive_hall_polynomials_with, derive_structure_polys_with};
use hallforge_core::lazard::{
    bilinear_from_lie, compare_graded_lie, free_nilpotent_lie_of, lazard_lie_ring_with, pf_solution_space,
};
use hallforge_core::ring::{Poly, Vars};
use serde::{Deserialize, Serialize};

use crate::config::{Config, Format, RingChoice};
use crate::error::{CliError, CliResult};
use crate::json::{
    basis_entries, rational_strings, to_string_pretty, BasisEntry, BinomialFormJson, BracketJson, CocycleFile,
    ConventionJson, ElementJson, HallPolyFile, LieConstantsJson, PolySetJson, WordJson,
};
use crate::sampling::Sampler;
use crate::suites::{self, Budget, Target};

#[derive(Debug, Parser)]
#[command(
    name = "hallforge",
    version,
    about = "Exact computations in free nilpotent groups N_{r,c}(R)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub class: usize,
    #[arg(long, value_enum, default_value = "z")]
    pub ring: RingChoice,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the JSON output to FILE.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

impl Common {
    pub fn config(&self) -> Config {
        Config {
            rank: self.rank,
            class: self.class,
            ring: self.ring,
            seed: self.seed,
            samples: self.samples,
            format: if self.json { Format::Json } else { Format::Text },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeformAction {
    Check,
    Mul,
    Iso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LieAction {
    Constants,
    Compare,
    Pf,
}

/// Element and word arguments are inline JSON or `@FILE`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Hall basic commutators.
    Basis(#[command(flatten)] Common),
    /// Multiply two elements.
    Mul {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Raise an element to a ring exponent.
    Pow {
        #[command(flatten)]
        common: Common,
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        exponent: String,
    },
    /// Invert an element.
    Inv {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// Collect a word into standard form.
    Collect {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Derive the canonical product and power polynomials.
    Hallpoly(#[command(flatten)] Common),
    /// Work in the group deformed by a cocycle file.
    Deform {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        cocycle: PathBuf,
        #[arg(value_enum)]
        action: DeformAction,
        elements: Vec<String>,
    },
    /// Lazard Lie ring structure constants and checks.
    Lie {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        action: LieAction,
    },
    /// Hall–Petresco words of a tuple (default: the generators).
    Petresco {
        #[command(flatten)]
        common: Common,
        elements: Vec<String>,
    },
    /// Run the property suites and print a pass/fail table.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run only the named suites.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Basis(c) | Command::Hallpoly(c) => c,
            Command::Mul { common, .. }
            | Command::Pow { common, .. }
            | Command::Inv { common, .. }
            | Command::Collect { common, .. }
            | Command::Deform { common, .. }
            | Command::Lie { common, .. }
            | Command::Petresco { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

/// Rendered result of a command. `failure` marks a verification failure.
pub struct Output {
    pub text: String,
    pub json: String,
    pub failure: Option<String>,
}

impl Output {
    fn new<T: Serialize>(text: String, value: &T) -> Self {
        Output {
            text,
            json: to_string_pretty(value),
            failure: None,
        }
    }

    fn failing(mut self, failed: bool, message: impl FnOnce() -> String) -> Self {
        if failed {
            self.failure = Some(message());
        }
        self
    }
}

/// What the process should print and return.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: 1,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code: 0,
                }
            }
        }
    }
}

pub fn run(command: &Command) -> Outcome {
    let common = command.common();
    let fail = |e: CliError| Outcome {
        stdout: String::new(),
        stderr: format!("hallforge: {}\n", e),
        code: e.exit_code(),
    };
    let out = match execute(command) {
        Ok(out) => out,
        Err(e) => return fail(e),
    };
    let mut stdout = if common.json {
        out.json.clone()
    } else {
        out.text.clone()
    };
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &out.json) {
            return fail(e.into());
        }
        stdout = if common.json {
            String::new()
        } else {
            format!("wrote {}\n", path.display())
        };
    }
    match out.failure {
        Some(msg) => Outcome {
            stdout,
            stderr: format!("hallforge: verification failed: {}\n", msg),
            code: 3,
        },
        None => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
    }
}

fn read_arg(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_string()),
    }
}

fn parse_element(group: &NilpotentGroup, arg: &str) -> CliResult<GroupElement> {
    let e: ElementJson = serde_json::from_str(&read_arg(arg)?)?;
    e.to_element(group)
}

fn element_output(g: &GroupElement) -> Output {
    Output::new(format!("{}\n", g), &ElementJson::from_element(g))
}

pub fn execute(command: &Command) -> CliResult<Output> {
    let config = command.common().config();
    config.validate()?;
    let group = NilpotentGroup::new(config.rank, config.class, config.ring.ring())?;
    match command {
        Command::Basis(_) => Ok(basis(&group)),
        Command::Mul { a, b, .. } => {
            let (a, b) = (parse_element(&group, a)?, parse_element(&group, b)?);
            Ok(element_output(&group.mul(&a, &b)?))
        }
        Command::Pow { element, exponent, .. } => {
            let g = parse_element(&group, element)?;
            let e = group.ring().parse(exponent)?;
            Ok(element_output(&group.pow(&g, &e)?))
        }
        Command::Inv { element, .. } => Ok(element_output(&group.inv(&parse_element(&group, element)?)?)),
        Command::Collect { word, .. } => {
            let w: WordJson = serde_json::from_str(&read_arg(word)?)?;
            let w = w.to_word(&group)?;
            let structure = derive_structure_polys_with(group.tables().clone())?;
            Ok(element_output(&Collector::new(&group, &structure)?.collect(&w)?))
        }
        Command::Hallpoly(_) => hallpoly(&group),
        Command::Deform {
            cocycle,
            action,
            elements,
            ..
        } => deform(&group, &config, cocycle, *action, elements),
        Command::Lie { action, .. } => lie(&group, *action),
        Command::Petresco { elements, .. } => petresco(&group, elements),
        Command::Verify { suites, .. } => verify(&config, suites),
    }
}

fn basis(group: &NilpotentGroup) -> Output {
    let entries = basis_entries(group.basis());
    let mut text = String::new();
    for e in &entries {
        text.push_str(&format!(
            "{:>3}  u[{},{}]  weight {}  {}\n",
            e.position, e.weight, e.j, e.weight, e.tree
        ));
    }
    Output::new(text, &entries)
}

fn poly_lines(label: &str, entries: &[BasisEntry], polys: &[Poly]) -> String {
    entries
        .iter()
        .zip(polys)
        .map(|(e, p)| format!("{}_{},{} = {}\n", label, e.weight, e.j, p))
        .collect()
}

fn vars_of(ring: &hallforge_core::ring::Ring) -> Vars {
    match ring {
        hallforge_core::ring::Ring::Polynomial(v) => v.clone(),
        _ => unreachable!("canonical polynomials live in a polynomial ring"),
    }
}

fn hallpoly(group: &NilpotentGroup) -> CliResult<Output> {
    let polys = derive_hall_polynomials_with(group.tables().clone())?;
    let (pb, qb) = polys.binomial_forms()?;
    let entries = basis_entries(group.basis());
    let file = HallPolyFile {
        r: group.rank(),
        c: group.class(),
        convention: ConventionJson::current(),
        basis: entries.clone(),
        product: PolySetJson::from_polys(&vars_of(polys.product_ring()), polys.product()),
        power: PolySetJson::from_polys(&vars_of(polys.power_ring()), polys.power()),
        product_binomial: pb.iter().map(BinomialFormJson::from_form).collect(),
        power_binomial: qb.iter().map(BinomialFormJson::from_form).collect(),
    };
    let text = poly_lines("p", &entries, polys.product()) + &poly_lines("q", &entries, polys.power());
    Ok(Output::new(text, &file))
}

fn load_deformation(group: &NilpotentGroup, path: &PathBuf) -> CliResult<Deformation> {
    let file: CocycleFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if (file.r, file.c) != (group.rank(), group.class()) {
        return Err(CliError::Contract(format!(
            "cocycle file is for N_({},{}) but the command runs in N_({},{})",
            file.r,
            file.c,
            group.rank(),
            group.class()
        )));
    }
    let cocycles = file
        .cocycles
        .iter()
        .map(|forms| {
            let forms = forms.iter().map(|f| f.to_form(2)).collect::<CliResult<Vec<_>>>()?;
            Ok(SymmetricCocycle::polynomial(forms)?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Deformation::new(group, cocycles)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleCheckJson {
    pub generator: usize,
    pub normalized: bool,
    pub symmetric: bool,
    pub cocycle_identity: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingJson {
    pub generator: usize,
    pub psi: Vec<BinomialFormJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoJson {
    pub r: usize,
    pub c: usize,
    pub splittings: Vec<SplittingJson>,
    pub verified_pairs: usize,
    pub images: Vec<ElementJson>,
}

fn deform(
    group: &NilpotentGroup,
    config: &Config,
    path: &PathBuf,
    action: DeformAction,
    elements: &[String],
) -> CliResult<Output> {
    let def = load_deformation(group, path)?;
    match action {
        DeformAction::Check => {
            let mut rows = Vec::new();
            for (k, f) in def.cocycles().iter().enumerate() {
                let rep = check_cocycle(f, group.ring(), 0, || group.ring().zero())?;
                rows.push(CocycleCheckJson {
                    generator: k + 1,
                    normalized: rep.normalized,
                    symmetric: rep.symmetric,
                    cocycle_identity: rep.cocycle_identity,
                    counterexample: rep.counterexample,
                });
            }
            let bad: Vec<_> = rows
                .iter()
                .filter(|r| !(r.normalized && r.symmetric && r.cocycle_identity))
                .map(|r| r.generator)
                .collect();
            let text = rows
                .iter()
                .map(|r| {
                    format!(
                        "f^{}: normalized {}  symmetric {}  cocycle {}{}\n",
                        r.generator,
                        r.normalized,
                        r.symmetric,
                        r.cocycle_identity,
                        r.counterexample
                            .as_ref()
                            .map(|w| format!("  witness {}", w))
                            .unwrap_or_default()
                    )
                })
                .collect();
            Ok(Output::new(text, &rows).failing(!bad.is_empty(), || {
                format!("f^k is not a symmetric cocycle for k in {:?}", bad)
            }))
        }
        DeformAction::Mul => {
            let [a, b] = elements else {
                return Err(CliError::Usage("deform mul takes two elements".into()));
            };
            let (a, b) = (parse_element(group, a)?, parse_element(group, b)?);
            let h = DeformedGroup::new(group.clone(), def)?;
            Ok(element_output(h.mul(&h.lift(a)?, &h.lift(b)?)?.element()))
        }
        DeformAction::Iso => {
            let h = DeformedGroup::new(group.clone(), def)?;
            let splittings = h
                .deformation()
                .cocycles()
                .iter()
                .map(|f| coboundary_split_integers(f, &[]))
                .collect::<Result<Vec<_>, _>>()?;
            let report: Vec<SplittingJson> = splittings
                .iter()
                .enumerate()
                .map(|(k, s)| SplittingJson {
                    generator: k + 1,
                    psi: s
                        .closed_form()
                        .expect("file cocycles are polynomial")
                        .iter()
                        .map(BinomialFormJson::from_form)
                        .collect(),
                })
                .collect();
            let phi = iso_from_splittings(&h, splittings)?;
            let mut s = Sampler::for_label(config.seed, "deform-iso");
            let mut pairs = Vec::with_capacity(config.samples);
            for _ in 0..config.samples {
                pairs.push((h.lift(s.element(group, 9))?, h.lift(s.element(group, 9))?));
            }
            let verdict = phi.verify(&pairs);
            let images = elements
                .iter()
                .map(|e| {
                    Ok(ElementJson::from_element(
                        &phi.forward(&h.lift(parse_element(group, e)?)?)?,
                    ))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let mut text: String = report
                .iter()
                .map(|s| {
                    format!(
                        "psi^{} = {:?}\n",
                        s.generator,
                        s.psi.iter().map(form_text).collect::<Vec<_>>()
                    )
                })
                .collect();
            text.push_str(&format!(
                "isomorphism checked on {} pairs: {}\n",
                pairs.len(),
                if verdict.is_ok() { "ok" } else { "FAILED" }
            ));
            for img in &images {
                text.push_str(&format!("image ({})\n", img.coords.join(", ")));
            }
            let json = IsoJson {
                r: group.rank(),
                c: group.class(),
                splittings: report,
                verified_pairs: pairs.len(),
                images,
            };
            Ok(Output::new(text, &json).failing(verdict.is_err(), || verdict.unwrap_err().to_string()))
        }
    }
}

fn form_text(f: &BinomialFormJson) -> String {
    if f.terms.is_empty() {
        return "0".into();
    }
    f.terms
        .iter()
        .map(|t| {
            let args: Vec<String> = t
                .degrees
                .iter()
                .zip(["n", "m"])
                .filter(|(d, _)| **d > 0)
                .map(|(d, v)| format!("binom({},{})", v, d))
                .collect();
            if args.is_empty() {
                t.coeff.clone()
            } else {
                format!("{}*{}", t.coeff, args.join("*"))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieCompareJson {
    pub r: usize,
    pub c: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfJson {
    pub r: usize,
    pub c: usize,
    pub domain: usize,
    pub codomain: usize,
    pub dimension: usize,
    pub scalars: Vec<Option<String>>,
}

fn lie(group: &NilpotentGroup, action: LieAction) -> CliResult<Output> {
    let (r, c) = (group.rank(), group.class());
    match action {
        LieAction::Constants => {
            let l = lazard_lie_ring_with(group.tables().clone(), group.ring())?;
            let mut constants = Vec::new();
            let mut text = String::new();
            for a in 0..l.dimension() {
                for b in a + 1..l.dimension() {
                    let v = l.bracket_basis(a, b);
                    if v.iter()
                        .any(|x| x != &hallforge_core::BigRational::from_integer(0.into()))
                    {
                        let value = rational_strings(v);
                        text.push_str(&format!("[e{}, e{}] = ({})\n", a, b, value.join(", ")));
                        constants.push(BracketJson { a, b, value });
                    }
                }
            }
            let json = LieConstantsJson {
                r,
                c,
                dims: l.dims().to_vec(),
                constants,
            };
            Ok(Output::new(text, &json))
        }
        LieAction::Compare => {
            let l = lazard_lie_ring_with(group.tables().clone(), group.ring())?;
            let equal = compare_graded_lie(&l, &free_nilpotent_lie_of(group.basis())?);
            let text = format!(
                "Lie(N_({},{})) {} the free nilpotent Lie ring\n",
                r,
                c,
                if equal { "equals" } else { "DIFFERS FROM" }
            );
            Ok(Output::new(text, &LieCompareJson { r, c, equal })
                .failing(!equal, || "structure constants differ".into()))
        }
        LieAction::Pf => {
            let f = bilinear_from_lie(&free_nilpotent_lie_of(group.basis())?)?;
            let sols = pf_solution_space(&f)?;
            let scalars: Vec<Option<String>> = sols.iter().map(|s| s.common_scalar().map(|a| a.to_string())).collect();
            let ok = sols.len() == 1 && scalars.iter().all(Option::is_some);
            let text = format!(
                "P(f) over {}x{} and {}x{} unknowns: dimension {}, {}\n",
                f.domain_dimension(),
                f.domain_dimension(),
                f.codomain_dimension(),
                f.codomain_dimension(),
                sols.len(),
                if scalars.iter().all(Option::is_some) {
                    "scalar pairs"
                } else {
                    "NOT scalar"
                }
            );
            let json = PfJson {
                r,
                c,
                domain: f.domain_dimension(),
                codomain: f.codomain_dimension(),
                dimension: sols.len(),
                scalars,
            };
            Ok(Output::new(text, &json).failing(!ok, || "P(f) is not the scalar line".into()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetrescoJson {
    pub inputs: Vec<ElementJson>,
    pub taus: Vec<ElementJson>,
}

fn petresco(group: &NilpotentGroup, elements: &[String]) -> CliResult<Output> {
    let xs = if elements.is_empty() {
        group.generators()
    } else {
        elements
            .iter()
            .map(|e| parse_element(group, e))
            .collect::<CliResult<Vec<_>>>()?
    };
    let taus = group.petresco_taus(&xs)?;
    let text = taus
        .iter()
        .enumerate()
        .map(|(k, t)| format!("tau_{} = {}\n", k + 1, t))
        .collect();
    let json = PetrescoJson {
        inputs: xs.iter().map(ElementJson::from_element).collect(),
        taus: taus.iter().map(ElementJson::from_element).collect(),
    };
    Ok(Output::new(text, &json))
}

fn verify(config: &Config, names: &[String]) -> CliResult<Output> {
    for n in names {
        if !suites::SUITES.contains(&n.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown suite {:?}; expected one of {}",
                n,
                suites::SUITES.join(", ")
            )));
        }
    }
    let target = Target::new(config.rank, config.class, config.ring.ring(), config.seed)?;
    let budget = Budget::uniform(config.samples);
    let mut report = suites::run_all_named(&target, &budget, names);
    report.ring = config.ring.ring().to_string();
    let failed: Vec<_> = report
        .suites
        .iter()
        .filter(|s| !s.passed)
        .map(|s| s.name.clone())
        .collect();
    Ok(Output::new(report.table(), &report).failing(!failed.is_empty(), || format!("suites {}", failed.join(", "))))
}
