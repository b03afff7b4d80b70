//! Graphviz output for Hasse diagrams of W̃^S.

use std::collections::BTreeMap;
use std::fmt::Write;

use schubert_core::bruhat::BruhatEngine;
use schubert_core::schubert::is_cpo;
use schubert_core::weyl::CorootElement;
use schubert_core::Result;

fn node_id(mu: &CorootElement) -> String {
    format!("\"{mu}\"")
}

/// DOT for all elements of length ≤ `max_len`, grouped by level.
/// Non-trivial palindromic classes are circled; closed parabolic orbits get
/// a second periphery.
pub fn hasse_dot(
    engine: &BruhatEngine,
    levels: &BTreeMap<u64, Vec<CorootElement>>,
    palindromic: &dyn Fn(&CorootElement) -> Result<bool>,
) -> Result<String> {
    let mut s = String::new();
    let name = levels
        .get(&0)
        .and_then(|l| l.first())
        .map(|z| z.rs().name())
        .unwrap_or_default();
    writeln!(s, "digraph hasse_{name} {{").unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=plaintext];").unwrap();
    for (l, els) in levels {
        let mut ids = Vec::with_capacity(els.len());
        for mu in els {
            let mut attrs = vec![format!("label=\"({mu})\"")];
            if !mu.is_zero() && palindromic(mu)? {
                attrs.push("shape=circle".into());
                if is_cpo(mu) {
                    attrs.push("peripheries=2".into());
                }
            }
            writeln!(s, "  {} [{}];", node_id(mu), attrs.join(", ")).unwrap();
            ids.push(node_id(mu));
        }
        writeln!(s, "  {{ rank=same; {} }} // level {l}", ids.join("; ")).unwrap();
    }
    for els in levels.values() {
        for mu in els {
            for nu in engine.covers(mu).iter() {
                writeln!(s, "  {} -> {};", node_id(nu), node_id(mu)).unwrap();
            }
        }
    }
    s.push_str("}\n");
    Ok(s)
}
