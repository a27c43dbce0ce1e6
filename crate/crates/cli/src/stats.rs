//! Aggregate statistics over result records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::record::ResultRecord;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub curves: usize,
    pub succeeded: usize,
    pub failed: usize,
    /// Invariant-factor profile, e.g. `[2,6]`, to the number of curves.
    pub profiles: BTreeMap<String, usize>,
    pub trivial: usize,
    pub bound_equals_order: usize,
    /// Shares among the succeeded curves.
    pub trivial_share: f64,
    pub bound_equals_order_share: f64,
    pub by_genus: BTreeMap<usize, usize>,
}

pub fn profile(invariants: &[String]) -> String {
    format!("[{}]", invariants.join(","))
}

/// Statistics over records; a repeated id counts once, the last one wins.
pub fn compute<'a>(records: impl IntoIterator<Item = &'a ResultRecord>) -> Stats {
    let mut latest: BTreeMap<&str, &ResultRecord> = BTreeMap::new();
    for r in records {
        latest.insert(&r.id, r);
    }
    let mut s = Stats::default();
    for r in latest.values() {
        s.curves += 1;
        *s.by_genus.entry(r.genus).or_default() += 1;
        let Some(res) = &r.result else {
            s.failed += 1;
            continue;
        };
        s.succeeded += 1;
        *s.profiles.entry(profile(&res.invariants)).or_default() += 1;
        if res.invariants.is_empty() {
            s.trivial += 1;
        }
        if res.bound.order == res.order {
            s.bound_equals_order += 1;
        }
    }
    if s.succeeded > 0 {
        s.trivial_share = s.trivial as f64 / s.succeeded as f64;
        s.bound_equals_order_share = s.bound_equals_order as f64 / s.succeeded as f64;
    }
    s
}

/// Plain-text table for people.
pub fn render(s: &Stats) -> String {
    let mut out = format!("curves: {} ({} ok, {} failed)\n", s.curves, s.succeeded, s.failed);
    for (g, n) in &s.by_genus {
        out += &format!("  genus {g}: {n}\n");
    }
    out += "torsion structure        count\n";
    let mut rows: Vec<_> = s.profiles.iter().collect();
    rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    for (p, n) in rows {
        out += &format!("  {p:<22} {n}\n");
    }
    out += &format!("trivial torsion: {} ({:.1}%)\n", s.trivial, 100.0 * s.trivial_share);
    out += &format!("order equals bound: {} ({:.1}%)\n", s.bound_equals_order, 100.0 * s.bound_equals_order_share);
    out
}
