//! Cohomology table reports: computation (optionally fanned out over a
//! thread pool), emitters, and diffs against expected-table files.

use crate::cohomology::{cohomology, Complex, CohomologyError, Theory};
use crate::formexpr::{format_form, parse_form};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct TableCell {
    pub p: u8,
    pub q: u8,
    pub dim: usize,
    pub reps: Vec<String>,
}

/// A full grid of dimensions for 0 ≤ p,q ≤ n (explicit zeros), or the
/// degree line 0 ≤ k ≤ 2n for de Rham.
#[derive(Clone, Debug)]
pub struct TableReport {
    pub model: String,
    pub theory: Theory,
    pub rank: u8,
    pub cells: Vec<TableCell>,
}

/// Number of worker threads honoring `FORMLAB_THREADS`.
pub fn thread_budget() -> usize {
    if let Ok(v) = std::env::var("FORMLAB_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Compute every cell of a theory's table. Cells are independent, so they
/// are chunked over up to `threads` scoped workers and reassembled in
/// canonical order.
pub fn compute_table(
    cx: &Complex,
    theory: Theory,
    threads: usize,
) -> Result<TableReport, CohomologyError> {
    let n = cx.model.rank;
    let coords: Vec<(u8, u8)> = if theory == Theory::DeRham {
        (0..=2 * n).map(|k| (k, 0)).collect()
    } else {
        let mut v = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                v.push((p, q));
            }
        }
        v
    };
    let mut results: Vec<Option<Result<TableCell, CohomologyError>>> =
        (0..coords.len()).map(|_| None).collect();
    let workers = threads.clamp(1, coords.len().max(1));
    if workers <= 1 {
        for (slot, &(p, q)) in results.iter_mut().zip(&coords) {
            *slot = Some(compute_cell(cx, theory, p, q));
        }
    } else {
        let chunk = coords.len().div_ceil(workers);
        std::thread::scope(|scope| {
            for (idx_chunk, out_chunk) in coords.chunks(chunk).zip(results.chunks_mut(chunk)) {
                scope.spawn(move || {
                    for (slot, &(p, q)) in out_chunk.iter_mut().zip(idx_chunk) {
                        *slot = Some(compute_cell(cx, theory, p, q));
                    }
                });
            }
        });
    }
    let mut cells = Vec::with_capacity(results.len());
    for r in results {
        cells.push(r.expect("all cells computed")?);
    }
    Ok(TableReport { model: cx.model.name.clone(), theory, rank: n, cells })
}

fn compute_cell(cx: &Complex, theory: Theory, p: u8, q: u8) -> Result<TableCell, CohomologyError> {
    let cell = cohomology(cx, theory, p, q)?;
    Ok(TableCell {
        p,
        q,
        dim: cell.dim,
        reps: cell.reps.iter().map(format_form).collect(),
    })
}

impl TableReport {
    pub fn dim_at(&self, p: u8, q: u8) -> usize {
        self.cells
            .iter()
            .find(|c| c.p == p && c.q == q)
            .map_or(0, |c| c.dim)
    }

    pub fn to_text(&self, with_reps: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} cohomology of {}\n",
            self.theory.name(),
            self.model
        ));
        if self.theory == Theory::DeRham {
            for c in &self.cells {
                out.push_str(&format!("b_{} = {}\n", c.p, c.dim));
                if with_reps {
                    for r in &c.reps {
                        out.push_str(&format!("    {r}\n"));
                    }
                }
            }
            return out;
        }
        out.push_str("p\\q ");
        for q in 0..=self.rank {
            out.push_str(&format!("{q:>4}"));
        }
        out.push('\n');
        for p in 0..=self.rank {
            out.push_str(&format!("{p:>3} "));
            for q in 0..=self.rank {
                out.push_str(&format!("{:>4}", self.dim_at(p, q)));
            }
            out.push('\n');
        }
        if with_reps {
            for c in &self.cells {
                if c.dim > 0 {
                    out.push_str(&format!("({},{}):\n", c.p, c.q));
                    for r in &c.reps {
                        out.push_str(&format!("    {r}\n"));
                    }
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.theory == Theory::DeRham {
            out.push_str("k,dim\n");
            for c in &self.cells {
                out.push_str(&format!("{},{}\n", c.p, c.dim));
            }
            return out;
        }
        out.push_str("p/q");
        for q in 0..=self.rank {
            out.push_str(&format!(",{q}"));
        }
        out.push('\n');
        for p in 0..=self.rank {
            out.push_str(&format!("{p}"));
            for q in 0..=self.rank {
                out.push_str(&format!(",{}", self.dim_at(p, q)));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|c| {
                serde_json::json!({
                    "p": c.p,
                    "q": c.q,
                    "dim": c.dim,
                    "reps": c.reps,
                })
            })
            .collect();
        serde_json::json!({
            "model": self.model,
            "theory": self.theory.name(),
            "rank": self.rank,
            "cells": cells,
        })
    }
}

/// Expected-table file: cell dimensions keyed `"p,q"` plus optional
/// representative lists compared up to a nonzero scalar per class.
#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct ExpectedTable {
    pub theory: String,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub reps: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct CellDiff {
    pub p: u8,
    pub q: u8,
    pub expected_dim: usize,
    pub actual_dim: usize,
    pub dim_ok: bool,
    pub reps_ok: bool,
    pub note: String,
}

impl CellDiff {
    pub fn ok(&self) -> bool {
        self.dim_ok && self.reps_ok
    }
}

/// Compare a computed table against expectations: exact cell-wise equality
/// of dimensions, representative matching up to a nonzero scalar per class.
pub fn diff_table(report: &TableReport, expected: &ExpectedTable, rank: u8) -> Vec<CellDiff> {
    let mut out = Vec::new();
    for cell in &report.cells {
        let key = format!("{},{}", cell.p, cell.q);
        let expected_dim = expected.dims.get(&key).copied().unwrap_or(0);
        let dim_ok = expected_dim == cell.dim;
        let (reps_ok, note) = match expected.reps.get(&key) {
            None => (true, String::new()),
            Some(want) => match reps_match(&cell.reps, want, rank) {
                Ok(()) => (true, String::new()),
                Err(msg) => (false, msg),
            },
        };
        out.push(CellDiff {
            p: cell.p,
            q: cell.q,
            expected_dim,
            actual_dim: cell.dim,
            dim_ok,
            reps_ok,
            note,
        });
    }
    out
}

/// Match two representative lists as sets, up to a nonzero scalar per form.
pub fn reps_match(actual: &[String], expected: &[String], rank: u8) -> Result<(), String> {
    if actual.len() != expected.len() {
        return Err(format!(
            "{} representatives computed, {} expected",
            actual.len(),
            expected.len()
        ));
    }
    let parse = |texts: &[String]| -> Result<Vec<crate::exterior::Form>, String> {
        texts
            .iter()
            .map(|t| parse_form(t, rank).map_err(|e| format!("bad expected form '{t}': {e}")))
            .collect()
    };
    let actual_forms = parse(actual)?;
    let expected_forms = parse(expected)?;
    let mut used = vec![false; expected_forms.len()];
    for a in &actual_forms {
        let mut found = false;
        for (i, e) in expected_forms.iter().enumerate() {
            if !used[i] && a.proportional_to(e) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Err(format!("no expected entry matches {}", format_form(a)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn csv_and_json_report_the_same_dims() {
        let cx = catalog::iwasawa_orbifold();
        let report = compute_table(&cx, Theory::Dolbeault, 1).unwrap();
        let csv = report.to_csv();
        // row p=1 should read 1,0,4,0,0
        assert!(csv.contains("1,0,4,0,0"));
        let json = report.to_json();
        let cells = json["cells"].as_array().unwrap();
        let c11 = cells
            .iter()
            .find(|c| c["p"] == 1 && c["q"] == 1)
            .unwrap();
        assert_eq!(c11["dim"], 4);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cx = crate::cohomology::Complex::full(catalog::nakamura_hp());
        let one = compute_table(&cx, Theory::BottChern, 1).unwrap();
        let many = compute_table(&cx, Theory::BottChern, 8).unwrap();
        assert_eq!(one.to_csv(), many.to_csv());
        for (a, b) in one.cells.iter().zip(&many.cells) {
            assert_eq!(a.reps, b.reps);
        }
    }

    #[test]
    fn diff_reports_mismatches() {
        let cx = catalog::iwasawa_orbifold();
        let report = compute_table(&cx, Theory::Dolbeault, 1).unwrap();
        let mut expected = ExpectedTable {
            theory: "dolbeault".to_string(),
            ..Default::default()
        };
        expected.dims.insert("0,0".into(), 1);
        expected.dims.insert("1,1".into(), 3); // wrong on purpose
        let diffs = diff_table(&report, &expected, 3);
        let c11 = diffs.iter().find(|d| d.p == 1 && d.q == 1).unwrap();
        assert!(!c11.dim_ok);
        let c00 = diffs.iter().find(|d| d.p == 0 && d.q == 0).unwrap();
        assert!(c00.ok());
    }
}
