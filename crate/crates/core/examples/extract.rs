//! Taylor components of a standard-form function by contour quadrature.

use holomat::holo::{default_nodes, extract_all, extract_component, ContourRadius, StandardFormSpec};
use holomat::random::{random_similarity, RandomModel};
use holomat::structure::active_degrees;
use holomat::Complex64;

fn main() {
    let mut model = RandomModel::new(3);
    let s = random_similarity(&mut model, 3, 50.0);
    let lambdas = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.25, -0.5)];
    let spec = StandardFormSpec::new(lambdas, s, false, 1.0).unwrap();
    let h = spec.to_holo();

    let n_max = 6;
    let comps = extract_all(&h, n_max, default_nodes(n_max), ContourRadius::Adaptive).unwrap();
    let x = model.ginibre(3, 3).scale_real(0.1);
    let mut norms = Vec::new();
    for p in &comps {
        let exact = spec.component(p.degree()).evaluate(&x).unwrap();
        let got = p.evaluate(&x).unwrap();
        norms.push(got.frobenius_norm());
        println!("degree {}: ‖Pₙ(x)‖ = {:.3e}, error vs exact {:.1e}", p.degree(), norms[p.degree()], got.distance(&exact));
    }
    println!("active degrees: {:?}", active_degrees(&norms));

    let coarse = extract_component(&h, 4, 3, ContourRadius::Adaptive).unwrap();
    println!("3 nodes for degree 4: {:?}", coarse.warnings());
}
