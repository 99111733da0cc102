use std::str::FromStr;

use crate::analysis::{
    antipodal_imputations, check_concurrency, coalition_system, core_membership_via_system, degeneracy_report,
    grand_worth, is_core_imputation, payment_report, profit_ranges, Caps, Imputation,
};
use crate::bmatching::{imputation_from_dual, in_dual_image, sample_core_vertices, SplitScheme};
use crate::dual::optimal_dual;
use crate::error::{Error, Result};
use crate::game::{GameInstance, Variant};
use crate::matching::{check_half_integral, classify, fractional_optimum};

use super::format::parse_game;
use super::report::{
    imputation_text, labelled, AnalysisReport, AntipodalRow, CheckSection, ClassificationSection, DualImageRow,
    DualSection, EdgePaymentRow, ExampleRow, InequalityRow, LabelRow, OptimaSection, PaymentsSection, StructureSection,
    SystemSection, VertexPaymentRow,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 7;
/// Core vertices sampled by `dual-image` without an imputation.
pub const SAMPLE_COUNT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub caps: Caps,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { caps: Caps::default(), seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Worth,
    Dual,
    Imputation,
    Classify,
    Payments,
    Concurrency,
    Antipodal,
    Degeneracy,
    System,
    Check,
    DualImage,
    Examples,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Worth,
        Command::Dual,
        Command::Imputation,
        Command::Classify,
        Command::Payments,
        Command::Concurrency,
        Command::Antipodal,
        Command::Degeneracy,
        Command::System,
        Command::Check,
        Command::DualImage,
        Command::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Worth => "worth",
            Command::Dual => "dual",
            Command::Imputation => "imputation",
            Command::Classify => "classify",
            Command::Payments => "payments",
            Command::Concurrency => "concurrency",
            Command::Antipodal => "antipodal",
            Command::Degeneracy => "degeneracy",
            Command::System => "system",
            Command::Check => "check",
            Command::DualImage => "dual-image",
            Command::Examples => "examples",
        }
    }

    pub fn needs_game(self) -> bool {
        self != Command::Examples
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownCommand(s.to_string()))
    }
}

/// Exit status for a failed command: 3 when a cap was hit, 2 for bad input,
/// 1 when the analysis itself says no (for instance an empty core).
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::CapExceeded { .. } => 3,
        Error::DuplicateVertex(_)
        | Error::UnknownVertex(_)
        | Error::UnknownEdge(_)
        | Error::Invalid(_)
        | Error::Parse { .. }
        | Error::WrongVariant { .. }
        | Error::DimensionMismatch { .. }
        | Error::SplitMismatch(_)
        | Error::UnknownCommand(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Runs one command. `imputation` is the comma separated vector for `check`
/// and `dual-image`.
pub fn run_command(
    command: Command,
    game: Option<&GameInstance>,
    imputation: Option<&str>,
    options: &Options,
) -> Result<AnalysisReport> {
    if command == Command::Examples {
        return run_examples(options);
    }
    let g = game.ok_or_else(|| Error::Parse { location: "arguments".into(), message: "missing --game".into() })?;
    let caps = options.caps;
    let mut report = AnalysisReport::new(command.name(), Some(g), caps);
    match command {
        Command::Worth => report.worth = Some(grand_worth(g, &caps)?),
        Command::Dual => add_dual(&mut report, g)?,
        Command::Imputation => {
            add_dual(&mut report, g)?;
            add_imputation(&mut report, g, &caps)?;
        }
        Command::Classify => add_classification(&mut report, g, &caps)?,
        Command::Payments => add_payments(&mut report, g, &caps)?,
        Command::Concurrency => add_concurrency(&mut report, g, &caps)?,
        Command::Antipodal => add_antipodal(&mut report, g, &caps)?,
        Command::Degeneracy => report.degeneracy = Some(degeneracy_report(g, &caps)?),
        Command::System => add_system(&mut report, g, &caps)?,
        Command::Check => {
            let imp = required_imputation(g, imputation)?;
            let check = is_core_imputation(g, &imp, &caps)?;
            if !check.in_core {
                report.finding = Some(format!("{imp} is not a core imputation"));
            }
            report.check = Some(CheckSection::new(g, &imp, &check));
        }
        Command::DualImage => match imputation {
            Some(text) => {
                let imp = Imputation::parse(g, text)?;
                let row = dual_image_row(g, &imp, &caps)?;
                report.finding = match (row.in_core, row.in_dual_image) {
                    (false, _) => Some(format!("{imp} is not a core imputation")),
                    (true, false) => Some(format!("{imp} is in the core but no optimal dual produces it")),
                    (true, true) => None,
                };
                report.dual_image = Some(vec![row]);
            }
            None => add_samples(&mut report, g, options)?,
        },
        Command::Examples => unreachable!(),
    }
    Ok(report)
}

fn required_imputation(g: &GameInstance, text: Option<&str>) -> Result<Imputation> {
    let text =
        text.ok_or_else(|| Error::Parse { location: "arguments".into(), message: "missing --imputation".into() })?;
    Imputation::parse(g, text)
}

fn add_dual(report: &mut AnalysisReport, g: &GameInstance) -> Result<()> {
    let (y, objective) = optimal_dual(g)?;
    report.dual = Some(DualSection::new(g, &y, objective));
    Ok(())
}

/// Balanced splits for the variants that need one.
fn add_imputation(report: &mut AnalysisReport, g: &GameInstance, caps: &Caps) -> Result<()> {
    let (y, _) = optimal_dual(g)?;
    let imp = imputation_from_dual(g, &y, &SplitScheme::Balanced, caps)?;
    report.imputation = Some(labelled(g, &imp));
    Ok(())
}

fn add_classification(report: &mut AnalysisReport, g: &GameInstance, caps: &Caps) -> Result<()> {
    let c = classify(g, caps.multiplicity)?;
    report.optima = Some(OptimaSection {
        max_weight: c.optima.max_weight.clone(),
        matchings: c.optima.matchings.iter().map(|m| m.label(g)).collect(),
    });
    report.classification = Some(ClassificationSection {
        vertices: g
            .vertices()
            .iter()
            .zip(&c.vertices)
            .map(|(v, &label)| LabelRow { name: v.id.clone(), label })
            .collect(),
        edges: c.edges.iter().enumerate().map(|(e, &label)| LabelRow { name: g.edge_label(e), label }).collect(),
    });
    Ok(())
}

fn add_payments(report: &mut AnalysisReport, g: &GameInstance, caps: &Caps) -> Result<()> {
    let payments = payment_report(g, caps)?;
    let ranges = profit_ranges(g, caps)?;
    report.payments = Some(PaymentsSection {
        vertices: payments
            .vertices
            .into_iter()
            .zip(ranges)
            .map(|(p, (min_profit, max_profit))| VertexPaymentRow {
                vertex: p.vertex,
                min_profit,
                max_profit,
                paid_sometimes: p.paid_sometimes,
            })
            .collect(),
        edges: payments
            .edges
            .into_iter()
            .map(|e| EdgePaymentRow { edge: e.edge, max_slack: e.max_slack, always_fairly_paid: e.always_fairly_paid })
            .collect(),
    });
    Ok(())
}

fn add_concurrency(report: &mut AnalysisReport, g: &GameInstance, caps: &Caps) -> Result<()> {
    report.concurrency = Some(check_concurrency(g, caps)?);
    if g.variant() == Variant::GeneralMatching {
        let x = fractional_optimum(g)?;
        report.structure = Some(StructureSection::new(g, &x, &check_half_integral(g, &x)));
    }
    Ok(())
}

fn add_antipodal(report: &mut AnalysisReport, g: &GameInstance, caps: &Caps) -> Result<()> {
    let a = antipodal_imputations(g, caps)?;
    report.antipodal = Some(
        g.vertices()
            .iter()
            .enumerate()
            .map(|(q, v)| AntipodalRow {
                vertex: v.id.clone(),
                u_optimal: a.u_optimal.profits[q].clone(),
                v_optimal: a.v_optimal.profits[q].clone(),
            })
            .collect(),
    );
    Ok(())
}

fn add_system(report: &mut AnalysisReport, g: &GameInstance, caps: &Caps) -> Result<()> {
    let sys = coalition_system(g, caps)?;
    report.system = Some(SystemSection {
        grand_worth: sys.grand_worth.clone(),
        inequalities: sys
            .inequalities
            .iter()
            .map(|i| InequalityRow { coalition: i.coalition.label(g), worth: i.rhs.clone() })
            .collect(),
        skipped_infeasible: sys.skipped_infeasible.iter().map(|c| c.label(g)).collect(),
    });
    Ok(())
}

fn dual_image_row(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<DualImageRow> {
    Ok(DualImageRow {
        imputation: imputation_text(&labelled(g, imp)),
        in_core: is_core_imputation(g, imp, caps)?.in_core,
        in_dual_image: in_dual_image(g, imp, caps)?,
    })
}

/// Seeded vertices of the core polytope, each tested against the dual image.
fn add_samples(report: &mut AnalysisReport, g: &GameInstance, options: &Options) -> Result<()> {
    let caps = &options.caps;
    report.seed = Some(options.seed);
    let sys = coalition_system(g, caps)?;
    let mut rows = Vec::new();
    for imp in sample_core_vertices(g, caps, options.seed, SAMPLE_COUNT)? {
        rows.push(DualImageRow {
            imputation: imputation_text(&labelled(g, &imp)),
            in_core: core_membership_via_system(&sys, &imp)?.in_core,
            in_dual_image: in_dual_image(g, &imp, caps)?,
        });
    }
    report.dual_image = Some(rows);
    Ok(())
}

/// The full analysis a bundled instance is pinned against.
pub fn instance_report(g: &GameInstance, options: &Options) -> Result<AnalysisReport> {
    let caps = options.caps;
    let mut report = AnalysisReport::new("report", Some(g), caps);
    match g.variant() {
        Variant::Assignment => {
            report.worth = Some(grand_worth(g, &caps)?);
            add_classification(&mut report, g, &caps)?;
            add_dual(&mut report, g)?;
            add_imputation(&mut report, g, &caps)?;
            add_payments(&mut report, g, &caps)?;
            add_antipodal(&mut report, g, &caps)?;
            report.degeneracy = Some(degeneracy_report(g, &caps)?);
        }
        Variant::GeneralMatching => {
            add_concurrency(&mut report, g, &caps)?;
            add_classification(&mut report, g, &caps)?;
            if report.concurrency.as_ref().is_some_and(|c| c.concurrent) {
                add_dual(&mut report, g)?;
                add_imputation(&mut report, g, &caps)?;
                add_payments(&mut report, g, &caps)?;
                report.degeneracy = Some(degeneracy_report(g, &caps)?);
            }
        }
        _ => {
            report.worth = Some(grand_worth(g, &caps)?);
            add_classification(&mut report, g, &caps)?;
            add_dual(&mut report, g)?;
            add_imputation(&mut report, g, &caps)?;
            add_system(&mut report, g, &caps)?;
            add_samples(&mut report, g, options)?;
        }
    }
    Ok(report)
}

/// An instance file shipped with the crate and its pinned text report.
#[derive(Debug, Clone, Copy)]
pub struct Bundled {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: &'static str,
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        [$(Bundled {
            name: $name,
            source: include_str!(concat!("../../instances/", $name, ".toml")),
            expected: include_str!(concat!("../../instances/", $name, ".expect")),
        }),*]
    };
}

pub fn bundled_instances() -> &'static [Bundled] {
    static ALL: [Bundled; 9] = bundled!(
        "example2",
        "example3",
        "example4",
        "example5",
        "example6",
        "k3",
        "fig7-unconstrained",
        "fig7-constrained",
        "fig7-general",
    );
    &ALL
}

/// Parses a bundled instance by name.
pub fn bundled_game(name: &str) -> Result<GameInstance> {
    let b = bundled_instances().iter().find(|b| b.name == name).ok_or_else(|| Error::Parse {
        location: "instance".into(),
        message: format!("no bundled instance `{name}`"),
    })?;
    parse_game(b.source)
}

fn first_difference(expected: &str, found: &str) -> Option<String> {
    let (mut e, mut f) = (expected.lines(), found.lines());
    for line in 1.. {
        match (e.next(), f.next()) {
            (None, None) => return None,
            (a, b) if a == b => {}
            (a, b) => {
                return Some(format!(
                    "line {line}: expected `{}`, found `{}`",
                    a.unwrap_or("<end>"),
                    b.unwrap_or("<end>")
                ))
            }
        }
    }
    unreachable!()
}

fn run_examples(options: &Options) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::new("examples", None, options.caps);
    let mut rows = Vec::new();
    for b in bundled_instances() {
        let g = parse_game(b.source)?;
        let text = instance_report(&g, options)?.to_text();
        let first_difference = first_difference(b.expected, &text);
        rows.push(ExampleRow {
            name: b.name.to_string(),
            note: g.provenance.clone().unwrap_or_default(),
            matches: first_difference.is_none(),
            first_difference,
        });
    }
    let mismatched = rows.iter().filter(|r| !r.matches).count();
    if mismatched > 0 {
        report.finding = Some(format!("{mismatched} bundled instance(s) differ from their pinned reports"));
    }
    report.examples = Some(rows);
    Ok(report)
}
