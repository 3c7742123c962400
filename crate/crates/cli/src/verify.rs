//! Batch checks: the reference degeneracy table and the exact formulas.

use adeg_core::closed_forms::{
    chern_invincible, hyperflex_count, known_value, pencil_count, septactic_count, weierstrass_divisor,
};
use adeg_core::invariants::{ad_value, bounds_report, milnor_number, DegeneracyKind, RunConfig};
use adeg_core::{parse_germ, format_germ, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// (order, kind) for each value column.
pub const COLUMNS: [(usize, DegeneracyKind); 6] = [
    (3, DegeneracyKind::W2A),
    (4, DegeneracyKind::W2A),
    (2, DegeneracyKind::W2B),
    (3, DegeneracyKind::W2B),
    (2, DegeneracyKind::W1),
    (3, DegeneracyKind::W1),
];

/// Germ, Milnor number, then one value per column.
pub const TABLE: [(&str, u64, [u64; 6]); 11] = [
    ("x*y", 1, [1, 5, 1, 5, 2, 6]),
    ("y^2 - x^3", 2, [2, 10, 2, 10, 3, 8]),
    ("y^2 - x^4", 3, [3, 18, 3, 15, 4, 12]),
    ("y^2 - x^5", 4, [4, 24, 4, 20, 5, 15]),
    ("y^2 - x^6", 5, [5, 30, 5, 25, 6, 18]),
    ("y^3 - x^2*y", 4, [6, 29, 4, 24, 6, 18]),
    ("y^4 - x^2*y", 5, [7, 36, 5, 29, 7, 20]),
    ("y^5 - x^2*y", 6, [8, 45, 6, 34, 8, 24]),
    ("y^3 - x^4", 6, [9, 44, 6, 36, 8, 22]),
    ("x*y^3 - x^3", 7, [10, 53, 7, 41, 9, 26]),
    ("y^3 - x^5", 8, [12, 62, 8, 48, 10, 29]),
];

pub struct Summary {
    pub checks: usize,
    pub failures: Vec<String>,
    pub cells: Vec<Value>,
}

impl Summary {
    fn new() -> Self {
        Summary { checks: 0, failures: Vec::new(), cells: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks,
            "passed": self.checks - self.failures.len(),
            "failed": self.failures.len(),
            "mismatches": self.failures,
            "cells": self.cells,
        })
    }
}

pub fn table1(cfg: &RunConfig) -> Result<Summary> {
    let mut s = Summary::new();
    for (text, mu, row) in TABLE {
        let germ = parse_germ(text)?;
        let name = format_germ(&germ);
        let got_mu = milnor_number(&germ, cfg)?;
        s.check(got_mu == mu, || format!("{name} mu: expected {mu}, got {got_mu}"));
        s.cells.push(json!({"germ": name, "column": "mu", "expected": mu, "value": got_mu}));
        for ((m, kind), want) in COLUMNS.into_iter().zip(row) {
            let r = ad_value(&germ, m, kind, cfg);
            let (value, agreement, attempts) = match &r {
                Ok(r) => (Some(r.value), r.agreement, r.attempts()),
                Err(_) => (None, 0, 0),
            };
            let col = format!("{kind} m={m}");
            match &r {
                Ok(_) => s.check(value == Some(want), || {
                    format!("{name} {col}: expected {want}, got {}", value.unwrap_or_default())
                }),
                Err(e) => s.check(false, || format!("{name} {col}: {e}")),
            }
            if let Some(k) = known_value(&germ, m, kind) {
                s.check(k == BigInt::from(want), || format!("{name} {col}: closed form {k} vs table {want}"));
            }
            if let Some(v) = value {
                let b = bounds_report(&germ, m, kind, v, cfg)?;
                s.check(b.holds, || format!("{name} {col}: {v} outside bounds"));
            }
            s.cells.push(json!({
                "germ": name,
                "column": col,
                "expected": want,
                "value": value,
                "agreement": agreement,
                "attempts": attempts,
            }));
        }
    }
    Ok(s)
}

pub fn formulas() -> Result<Summary> {
    let mut s = Summary::new();
    for d in 3..=10i64 {
        let p = pencil_count(d, 4)?;
        let h = hyperflex_count(d);
        s.check(p == h, || format!("pencil(d={d}, m=4) = {p} but hyperflex = {h}"));
        let sep = septactic_count(d);
        s.check(sep.is_ok(), || format!("septactic d={d}: {}", sep.as_ref().unwrap_err()));
    }
    for g in 2..=12i64 {
        for n in 1..=5i64 {
            for kind in [DegeneracyKind::W2A, DegeneracyKind::W2B] {
                let w = weierstrass_divisor(g, n, kind);
                s.check(w.is_ok(), || format!("weierstrass g={g} n={n} {kind}: {}", w.as_ref().unwrap_err()));
            }
        }
    }
    let c = chern_invincible(4);
    s.check(c.c2_w2 == BigInt::from(11), || format!("c2 W^2 coefficient at m=4 is {}", c.c2_w2));
    Ok(s)
}
