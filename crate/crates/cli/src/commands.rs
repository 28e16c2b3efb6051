use hs_oscillator::acceptance::{all_passed, run_all, run_all_with, CriterionOutcome};
use hs_oscillator::dual::Dual;
use hs_oscillator::exact::{exact_energies, OracleConfig};
use hs_oscillator::hs_terms::{terms_generic, Curve, TermSet, TermSource};
use hs_oscillator::scale_select::{
    Method, SelectionResult, Selector, SpreadObjective, ZSearchWindow,
};
use hs_oscillator::{Level, OscillatorModel};

use crate::args::ZRange;
use crate::output::{sci, Cell, Table};
use crate::CliError;

pub const ZSWEEP_COLUMNS: &[&str] = &["n", "g", "z", "tag", "value", "exact"];
pub const SELECT_COLUMNS: &[&str] = &[
    "method", "order", "n", "g", "z_chosen", "energy", "exact", "ratio", "rule", "closed_form_z", "candidates",
    "spread", "status",
];
pub const EXACT_COLUMNS: &[&str] =
    &["n", "g", "energy", "error_estimate", "basis_used", "basis_omega", "converged", "rel_tol"];
pub const SPREAD_COLUMNS: &[&str] = &[
    "n", "g", "k3_spread", "k3_z_left", "k3_z_right", "h1_spread", "h1_z_left", "h1_z_right", "ratio", "status",
];
pub const REPORT_COLUMNS: &[&str] = &["id", "title", "passed", "detail"];

/// A table plus whether any row carries a numerical failure.
pub struct Output {
    pub table: Table,
    pub failed_rows: usize,
}

fn model(g: f64) -> Result<OscillatorModel, CliError> {
    OscillatorModel::with_g(g).map_err(|e| CliError::Usage(e.to_string()))
}

fn oracle(model: &OscillatorModel, levels: &[u32]) -> Result<Vec<f64>, CliError> {
    let n_max = levels.iter().copied().max().unwrap_or(0);
    Ok(exact_energies(model, n_max, &OracleConfig::default())?.energies)
}

pub fn zsweep(levels: &[u32], g: f64, z: Option<ZRange>, tags: &[Curve], with_exact: bool) -> Result<Output, CliError> {
    let model = model(g)?;
    let exact = if with_exact { Some(oracle(&model, levels)?) } else { None };
    let sel = Selector::closed_form();
    let mut table = Table::new(ZSWEEP_COLUMNS);
    for &n in levels {
        let range = z.unwrap_or_else(|| {
            let w = ZSearchWindow::default_for(Level(n), &model);
            ZRange { min: w.z_min, max: w.z_max, steps: 400 }
        });
        let reference = exact.as_ref().map(|e| e[n as usize]);
        for &curve in tags {
            for zv in range.grid() {
                let value = sel.value(curve, Level(n), zv, &model)?;
                table.push(vec![n.into(), g.into(), zv.into(), curve.tag().into(), value.into(), Cell::opt_float(reference)]);
            }
        }
    }
    Ok(Output { table, failed_rows: 0 })
}

pub fn select(method: Method, orders: &[u32], levels: &[u32], g: f64) -> Result<Output, CliError> {
    let model = model(g)?;
    let exact = oracle(&model, levels)?;
    let sel = Selector::closed_form();
    let mut table = Table::new(SELECT_COLUMNS);
    let mut failed_rows = 0;
    for &n in levels {
        let window = ZSearchWindow::default_for(Level(n), &model);
        for &k in orders {
            let result = match method {
                Method::Fac => sel.fac(Level(n), &model, k, &window),
                Method::Pms => sel.pms(Level(n), &model, k, &window),
                Method::Var0 => sel.variational(Level(n), &model, 0, &window),
                Method::Var1 => sel.variational(Level(n), &model, 1, &window),
            };
            let reference = exact[n as usize];
            let row = match result {
                Ok(r) => selection_row(&r, g, reference),
                Err(e) => {
                    failed_rows += 1;
                    let mut row = vec![method.name().into(), k.into(), n.into(), g.into()];
                    row.extend([Cell::Empty, Cell::Empty, reference.into()]);
                    row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
                    row.push(format!("error: {e}").into());
                    row
                }
            };
            table.push(row);
        }
    }
    Ok(Output { table, failed_rows })
}

fn selection_row(r: &SelectionResult, g: f64, exact: f64) -> Vec<Cell> {
    let candidates: Vec<String> = r.candidates.z_values().into_iter().map(sci).collect();
    vec![
        r.method.name().into(),
        r.order.into(),
        r.n.0.into(),
        g.into(),
        r.z_chosen.into(),
        r.energy.into(),
        exact.into(),
        (r.energy / exact).into(),
        r.rule_applied.name().into(),
        Cell::opt_float(r.closed_form_z),
        candidates.join(";").into(),
        Cell::opt_float(r.spread.map(|s| s.value())),
        "ok".into(),
    ]
}

pub fn exact(g: f64, levels: u32, tol: f64, omega: Option<f64>) -> Result<Output, CliError> {
    if levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let model = model(g)?;
    let config = OracleConfig { basis_omega: omega, ..OracleConfig::with_tolerance(tol) };
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let r = exact_energies(&model, levels - 1, &config)?;
    let mut table = Table::new(EXACT_COLUMNS);
    for (n, (&e, &err)) in r.energies.iter().zip(&r.per_level_error_estimate).enumerate() {
        table.push(vec![
            n.into(),
            g.into(),
            e.into(),
            err.into(),
            r.basis_used.into(),
            r.basis_omega.into(),
            r.converged.into(),
            tol.into(),
        ]);
    }
    Ok(Output { table, failed_rows: 0 })
}

pub fn spread(levels: &[u32], g: f64) -> Result<Output, CliError> {
    let model = model(g)?;
    let sel = Selector::closed_form();
    let mut table = Table::new(SPREAD_COLUMNS);
    let mut failed_rows = 0;
    for &n in levels {
        let window = ZSearchWindow::extended(Level(n), &model);
        let k3 = sel.spread(Level(n), &model, SpreadObjective::K3PartialSum, &window);
        let h1 = sel.spread(Level(n), &model, SpreadObjective::HExpect1, &window);
        let mut row = vec![n.into(), g.into()];
        for s in [&k3, &h1] {
            match s {
                Ok(s) => row.extend([s.value().into(), s.z_left.into(), s.z_right.into()]),
                Err(_) => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
            }
        }
        match (&k3, &h1) {
            (Ok(a), Ok(b)) => {
                row.push((b.value() / a.value()).into());
                row.push("ok".into());
            }
            (Err(e), _) | (_, Err(e)) => {
                failed_rows += 1;
                row.push(Cell::Empty);
                row.push(format!("error: {e}").into());
            }
        }
        table.push(row);
    }
    Ok(Output { table, failed_rows })
}

/// Closed-form terms with the sign of the third-order energy flipped; lets the
/// report be checked for sensitivity from the command line.
struct FlippedThirdOrder;

impl TermSource for FlippedThirdOrder {
    fn terms(&self, n: Level, z: Dual, x: Dual) -> TermSet<Dual> {
        let mut t = terms_generic(n.0, z, x);
        t.e3 = t.e3 * -1.0;
        t
    }
}

pub fn report(flip_e3_sign: bool) -> (Vec<CriterionOutcome>, bool) {
    let outcomes = if flip_e3_sign { run_all_with(&FlippedThirdOrder) } else { run_all() };
    let ok = all_passed(&outcomes);
    (outcomes, ok)
}

pub fn report_table(outcomes: &[CriterionOutcome]) -> Table {
    let mut table = Table::new(REPORT_COLUMNS);
    for o in outcomes {
        table.push(vec![o.id.into(), o.title.into(), o.passed.into(), o.detail.clone().into()]);
    }
    table
}
