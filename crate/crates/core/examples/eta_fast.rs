//! η* from the M-W matching, with the subtree built by resolution.

use phylo_zigzag::{build_mcst_via_resolution, decompose, eta_fast_with, fixtures, FastResult};

fn main() {
    for (name, n) in [("fix_a", fixtures::fix_a()), ("fix_b", fixtures::fix_b())] {
        let d = decompose(&n);
        match eta_fast_with(&n, &d) {
            FastResult::Applicable { eta, matching } => {
                for p in &matching.pairs {
                    println!("{name}: W #{} matched to M #{} at `{}`", p.w_trail, p.m_trail, n.name(p.vertex));
                }
                let tree = build_mcst_via_resolution(&n).expect("saturated matching");
                println!("{name}: η* = {eta}, uncovered {:?}", tree.uncovered_names(&n));
            }
            FastResult::Inapplicable { matching, w_fences } => {
                println!("{name}: only {} of {w_fences} W-fences matched, so η* > {w_fences}", matching.len());
            }
        }
    }
}
