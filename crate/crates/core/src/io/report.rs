//! Analysis reports: a fixed sequence of optional sections, rendered as JSON
//! or as aligned text tables.

use std::fmt::Write;

use serde::Serialize;

use crate::analysis::{Caps, CoreCheck, DegeneracyReport, Imputation, WorthReport};
use crate::dual::DualSolution;
use crate::game::{GameInstance, Variant};
use crate::matching::{HalfIntegralReport, Label, MatchingVector};
use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Named {
    pub name: String,
    pub value: Rational,
}

fn named(ids: impl IntoIterator<Item = String>, values: &[Rational]) -> Vec<Named> {
    ids.into_iter().zip(values).map(|(name, value)| Named { name, value: value.clone() }).collect()
}

fn vertex_ids(g: &GameInstance) -> impl Iterator<Item = String> + '_ {
    g.vertices().iter().map(|v| v.id.clone())
}

fn edge_ids(g: &GameInstance) -> impl Iterator<Item = String> + '_ {
    (0..g.edge_count()).map(|e| g.edge_label(e))
}

/// A profit vector labelled by vertex.
pub fn labelled(g: &GameInstance, imp: &Imputation) -> Vec<Named> {
    named(vertex_ids(g), &imp.profits)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureSection {
    pub fractional_optimum: String,
    pub weight: Rational,
    pub half_integral: bool,
    pub matched_edges: Vec<String>,
    pub half_cycles: Vec<Vec<String>>,
}

impl StructureSection {
    pub fn new(g: &GameInstance, x: &MatchingVector, report: &HalfIntegralReport) -> Self {
        StructureSection {
            fractional_optimum: x.label(g),
            weight: x.weight.clone(),
            half_integral: report.is_half_integral,
            matched_edges: report.ones.iter().map(|&e| g.edge_label(e)).collect(),
            half_cycles: report
                .half_cycles
                .iter()
                .map(|c| c.iter().map(|&q| g.vertex(q).id.clone()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimaSection {
    pub max_weight: Rational,
    pub matchings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualSection {
    pub objective: Rational,
    pub vertex_prices: Vec<Named>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertex_lower: Vec<Named>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edge_upper: Vec<Named>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edge_lower: Vec<Named>,
}

impl DualSection {
    pub fn new(g: &GameInstance, y: &DualSolution, objective: Rational) -> Self {
        DualSection {
            objective,
            vertex_prices: named(vertex_ids(g), &y.vertex_upper),
            vertex_lower: named(vertex_ids(g), &y.vertex_lower),
            edge_upper: named(edge_ids(g), &y.edge_upper),
            edge_lower: named(edge_ids(g), &y.edge_lower),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelRow {
    pub name: String,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationSection {
    pub vertices: Vec<LabelRow>,
    pub edges: Vec<LabelRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPaymentRow {
    pub vertex: String,
    pub min_profit: Rational,
    pub max_profit: Rational,
    pub paid_sometimes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePaymentRow {
    pub edge: String,
    pub max_slack: Rational,
    pub always_fairly_paid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaymentsSection {
    pub vertices: Vec<VertexPaymentRow>,
    pub edges: Vec<EdgePaymentRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntipodalRow {
    pub vertex: String,
    pub u_optimal: Rational,
    pub v_optimal: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub coalition: String,
    pub worth: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemSection {
    pub grand_worth: Rational,
    pub inequalities: Vec<InequalityRow>,
    pub skipped_infeasible: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coalition: String,
    pub worth: Rational,
    pub allocated: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSection {
    pub imputation: Vec<Named>,
    pub in_core: bool,
    pub total: Rational,
    pub grand_worth: Rational,
    pub negative_vertex: Option<String>,
    pub witness: Option<Witness>,
    pub coalitions_checked: usize,
}

impl CheckSection {
    pub fn new(g: &GameInstance, imp: &Imputation, check: &CoreCheck) -> Self {
        CheckSection {
            imputation: labelled(g, imp),
            in_core: check.in_core,
            total: check.total.clone(),
            grand_worth: check.grand_worth.clone(),
            negative_vertex: check.negative.map(|q| g.vertex(q).id.clone()),
            witness: check.witness.as_ref().map(|w| Witness {
                coalition: w.coalition.label(g),
                worth: w.worth.clone(),
                allocated: w.allocated.clone(),
            }),
            coalitions_checked: check.coalitions_checked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualImageRow {
    pub imputation: String,
    pub in_core: bool,
    pub in_dual_image: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleRow {
    pub name: String,
    pub note: String,
    pub matches: bool,
    /// `line N: expected ... | found ...` for the first differing line.
    pub first_difference: Option<String>,
}

/// Everything a command can report. Sections are emitted in field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub game: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub caps: Caps,
    /// Present when the report depends on sampling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worth: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrency: Option<WorthReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima: Option<OptimaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imputation: Option<Vec<Named>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payments: Option<PaymentsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipodal: Option<Vec<AntipodalRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<DegeneracyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_image: Option<Vec<DualImageRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub examples: Option<Vec<ExampleRow>>,
    /// Set when the command's question was answered negatively.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finding: Option<String>,
}

impl AnalysisReport {
    pub fn new(command: &str, game: Option<&GameInstance>, caps: Caps) -> Self {
        AnalysisReport {
            command: command.to_string(),
            game: game.map(|g| g.name.clone().unwrap_or_else(|| "unnamed".to_string())),
            variant: game.map(GameInstance::variant),
            caps,
            seed: None,
            worth: None,
            concurrency: None,
            structure: None,
            optima: None,
            dual: None,
            imputation: None,
            classification: None,
            payments: None,
            antipodal: None,
            degeneracy: None,
            system: None,
            check: None,
            dual_image: None,
            examples: None,
            finding: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut header = vec![("command", self.command.clone())];
        if let Some(game) = &self.game {
            header.push(("game", game.clone()));
        }
        if let Some(variant) = self.variant {
            header.push(("variant", variant.to_string()));
        }
        header.push(("caps", format!("vertices {}, multiplicity {}", self.caps.vertices, self.caps.multiplicity)));
        if let Some(seed) = self.seed {
            header.push(("seed", seed.to_string()));
        }
        out.push_str(&table(&[], header.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect()));

        if let Some(worth) = &self.worth {
            section(&mut out, "worth", format!("{worth}\n"));
        }
        if let Some(c) = &self.concurrency {
            let verdict = if c.concurrent {
                format!("concurrent: Q_i = Q_f = {}", c.q_integral)
            } else {
                format!("core empty: Q_i = {}, Q_f = {}", c.q_integral, c.q_fractional)
            };
            section(&mut out, "concurrency", verdict + "\n");
        }
        if let Some(s) = &self.structure {
            let cycles: Vec<String> = s.half_cycles.iter().map(|c| format!("({})", c.join(" "))).collect();
            let rows = vec![
                vec!["fractional optimum".into(), s.fractional_optimum.clone()],
                vec!["weight".into(), s.weight.to_string()],
                vec!["half-integral".into(), yes_no(s.half_integral)],
                vec!["matched edges".into(), or_none(s.matched_edges.join(", "))],
                vec!["half cycles".into(), or_none(cycles.join(", "))],
            ];
            section(&mut out, "structure", table(&[], rows));
        }
        if let Some(o) = &self.optima {
            let mut rows = vec![vec!["max weight".into(), o.max_weight.to_string()]];
            rows.extend(o.matchings.iter().enumerate().map(|(k, m)| vec![format!("optimum {}", k + 1), m.clone()]));
            section(&mut out, "optimal matchings", table(&[], rows));
        }
        if let Some(d) = &self.dual {
            let mut text = format!("objective {}\n", d.objective);
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (k, v) in d.vertex_prices.iter().enumerate() {
                let mut row = vec![v.name.clone(), v.value.to_string()];
                if let Some(lower) = d.vertex_lower.get(k) {
                    row.push(lower.value.to_string());
                }
                rows.push(row);
            }
            let headers: &[&str] =
                if d.vertex_lower.is_empty() { &["vertex", "price"] } else { &["vertex", "upper", "lower"] };
            text.push_str(&table(headers, rows));
            if !d.edge_upper.is_empty() {
                let rows = d
                    .edge_upper
                    .iter()
                    .enumerate()
                    .map(|(k, e)| {
                        let mut row = vec![e.name.clone(), e.value.to_string()];
                        if let Some(lower) = d.edge_lower.get(k) {
                            row.push(lower.value.to_string());
                        }
                        row
                    })
                    .collect();
                let headers: &[&str] =
                    if d.edge_lower.is_empty() { &["edge", "z"] } else { &["edge", "upper", "lower"] };
                text.push_str(&table(headers, rows));
            }
            section(&mut out, "optimal dual", text);
        }
        if let Some(imp) = &self.imputation {
            section(&mut out, "imputation", table(&["vertex", "profit"], pairs(imp)));
        }
        if let Some(c) = &self.classification {
            let rows = |items: &[LabelRow]| items.iter().map(|r| vec![r.name.clone(), r.label.to_string()]).collect();
            let mut text = table(&["vertex", "class"], rows(&c.vertices));
            text.push_str(&table(&["edge", "class"], rows(&c.edges)));
            section(&mut out, "classification", text);
        }
        if let Some(p) = &self.payments {
            let vertices = p
                .vertices
                .iter()
                .map(|r| {
                    vec![r.vertex.clone(), r.min_profit.to_string(), r.max_profit.to_string(), yes_no(r.paid_sometimes)]
                })
                .collect();
            let mut text = table(&["vertex", "min profit", "max profit", "paid sometimes"], vertices);
            let edges = p
                .edges
                .iter()
                .map(|r| vec![r.edge.clone(), r.max_slack.to_string(), yes_no(r.always_fairly_paid)])
                .collect();
            text.push_str(&table(&["edge", "max slack", "always fairly paid"], edges));
            section(&mut out, "payments", text);
        }
        if let Some(a) = &self.antipodal {
            let rows =
                a.iter().map(|r| vec![r.vertex.clone(), r.u_optimal.to_string(), r.v_optimal.to_string()]).collect();
            section(&mut out, "antipodal imputations", table(&["vertex", "U-optimal", "V-optimal"], rows));
        }
        if let Some(d) = &self.degeneracy {
            let plural = if d.optimum_count == 1 { "" } else { "s" };
            let mut text =
                format!("degenerate {} ({} optimal matching{plural})\n", yes_no(d.degenerate), d.optimum_count);
            let vertices = d
                .vertices
                .iter()
                .map(|r| vec![r.vertex.clone(), r.label.to_string(), yes_no(r.paid_sometimes)])
                .collect();
            text.push_str(&table(&["vertex", "class", "paid sometimes"], vertices));
            let edges = d
                .edges
                .iter()
                .map(|r| vec![r.edge.clone(), r.label.to_string(), yes_no(r.always_fairly_paid)])
                .collect();
            text.push_str(&table(&["edge", "class", "always fairly paid"], edges));
            section(&mut out, "degeneracy", text);
        }
        if let Some(s) = &self.system {
            let mut text = format!("grand coalition = {}\n", s.grand_worth);
            let rows = s.inequalities.iter().map(|i| vec![i.coalition.clone(), format!(">= {}", i.worth)]).collect();
            text.push_str(&table(&["coalition", "worth"], rows));
            if !s.skipped_infeasible.is_empty() {
                let _ = writeln!(text, "no feasible b-matching: {}", s.skipped_infeasible.join(" "));
            }
            section(&mut out, "coalition system", text);
        }
        if let Some(c) = &self.check {
            let mut rows = vec![
                vec!["imputation".into(), imputation_text(&c.imputation)],
                vec!["in core".into(), yes_no(c.in_core)],
                vec!["total".into(), format!("{} (grand coalition {})", c.total, c.grand_worth)],
                vec!["coalitions checked".into(), c.coalitions_checked.to_string()],
            ];
            if let Some(v) = &c.negative_vertex {
                rows.push(vec!["negative profit".into(), v.clone()]);
            }
            if let Some(w) = &c.witness {
                rows.push(vec!["witness".into(), format!("{} gets {} < {}", w.coalition, w.allocated, w.worth)]);
            }
            section(&mut out, "core check", table(&[], rows));
        }
        if let Some(rows) = &self.dual_image {
            let rows =
                rows.iter().map(|r| vec![r.imputation.clone(), yes_no(r.in_core), yes_no(r.in_dual_image)]).collect();
            section(&mut out, "dual image", table(&["imputation", "in core", "in dual image"], rows));
        }
        if let Some(rows) = &self.examples {
            let mut text = table(
                &["instance", "status", "note"],
                rows.iter()
                    .map(|r| vec![r.name.clone(), if r.matches { "ok" } else { "MISMATCH" }.into(), r.note.clone()])
                    .collect(),
            );
            for r in rows {
                if let Some(diff) = &r.first_difference {
                    let _ = writeln!(text, "{}: {diff}", r.name);
                }
            }
            section(&mut out, "bundled instances", text);
        }
        if let Some(finding) = &self.finding {
            section(&mut out, "finding", format!("{finding}\n"));
        }
        out
    }
}

/// `(1, 0, 1/10)` from labelled values.
pub fn imputation_text(values: &[Named]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.value.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn pairs(values: &[Named]) -> Vec<Vec<String>> {
    values.iter().map(|v| vec![v.name.clone(), v.value.to_string()]).collect()
}

fn yes_no(flag: bool) -> String {
    if flag { "yes" } else { "no" }.to_string()
}

fn section(out: &mut String, title: &str, body: String) {
    let _ = write!(out, "\n[{title}]\n{body}");
}

/// Left-aligned columns separated by two spaces; no header line when
/// `headers` is empty.
fn table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut all: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
    if !headers.is_empty() {
        all.push(headers.iter().map(|h| h.to_string()).collect());
    }
    all.extend(rows);
    let columns = all.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| all.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in all {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn or_none(list: String) -> String {
    if list.is_empty() {
        "none".into()
    } else {
        list
    }
}
