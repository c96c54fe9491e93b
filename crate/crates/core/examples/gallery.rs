//! The built-in example maps and their expected behavior.

use holomat::gallery::{gallery_direct_sum, gallery_embed_k2, gallery_nilpotent_range};
use holomat::structure::Tolerances;

fn main() {
    let entries = [gallery_nilpotent_range(), gallery_embed_k2(2), gallery_embed_k2(4), gallery_direct_sum(3)];
    for entry in entries {
        let run = entry.run(0, 200, &Tolerances::default());
        println!(
            "{} (k = {}, M_{} → M_{}): {}",
            run.name,
            run.k,
            entry.map.domain_dim(),
            entry.map.codomain_dim(),
            if run.passed { "all expectations hold" } else { "MISMATCH" }
        );
        for o in &run.outcomes {
            println!("  [{}] {}: {}", if o.passed { "ok" } else { "!!" }, o.expectation.name(), o.detail);
        }
        let d = &run.idempotent_pair;
        println!(
            "  E11, E21+E22: ‖θ(a)θ(b)‖ = {:.1e}, ‖θ(b)θ(a)‖ = {:.1e}, zero products preserved: {}",
            d.forward_norm, d.backward_norm, d.zero_product.passed
        );
    }
}
