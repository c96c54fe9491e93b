//! Sampled orthogonality testers on a standard form and its transpose variant.

use holomat::holo::StandardFormSpec;
use holomat::ortho::{test_orthogonal_additivity, test_orthogonal_multiplicativity, test_zero_product_preservation, Verdict};
use holomat::random::{random_similarity, RandomModel};
use holomat::{Complex64, HoloFunction};

fn show(name: &str, v: &Verdict) {
    let status = if v.passed { "pass" } else { "FAIL" };
    println!("  {name:<28} {status}  max residual {:.2e}", v.max_residual);
    if let Some(w) = &v.witness {
        println!("    witness at trial {}: ‖ab‖ = {:.1e}", w.trial, w.a.matmul(&w.b).frobenius_norm());
    }
}

fn main() {
    let s = random_similarity(&mut RandomModel::new(2), 3, 20.0);
    let lambdas = vec![Complex64::new(1.0, 0.0), Complex64::new(-0.5, 0.2)];
    for transpose in [false, true] {
        let h = StandardFormSpec::new(lambdas.clone(), s.clone(), transpose, 1.0).unwrap().to_holo();
        println!("{}:", h.label());
        let mut model = RandomModel::new(0);
        show("orthogonal additivity", &test_orthogonal_additivity(&h, &mut model, 200, 1e-9).unwrap());
        show("orthogonal multiplicativity", &test_orthogonal_multiplicativity(&h, &mut model, 200, 1e-9).unwrap());
        show("zero-product preservation", &test_zero_product_preservation(&h, &mut model, 200, 1e-9).unwrap());
    }

    let shifted = HoloFunction::new("x + x²ᵗ", 2, 2, 1.0, |x| &x.clone() + &x.matmul(x).transpose());
    println!("{}:", shifted.label());
    show("orthogonal multiplicativity", &test_orthogonal_multiplicativity(&shifted, &mut RandomModel::new(0), 200, 1e-9).unwrap());
}
