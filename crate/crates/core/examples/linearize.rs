//! Writing a homogeneous component as Pₙ(x) = T(xⁿ) with T linear.

use holomat::error::HoloError;
use holomat::holo::{extract_component, linearize, ContourRadius, HomogeneousComponent, StandardFormSpec};
use holomat::random::{random_similarity, RandomModel};
use holomat::{Complex64, ComplexMatrix};

fn main() {
    let mut model = RandomModel::new(11);
    let s = random_similarity(&mut model, 3, 30.0);
    let spec = StandardFormSpec::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(2.0, 1.0)], s, true, 1.0).unwrap();
    let p3 = extract_component(&spec.to_holo(), 3, 14, ContourRadius::Adaptive).unwrap();
    let t = linearize(&p3, &mut model, 1e-9).unwrap();
    println!("distance to exact λ₃S⁻¹(·)ᵗS: {:.2e}", t.distance(&spec.linear_part(3)));

    let x = model.ginibre(3, 3).scale_real(0.3);
    println!("‖T(x³) − P₃(x)‖ = {:.2e}", t.apply(&x.pow(3)).distance(&p3.evaluate(&x).unwrap()));

    let square = HomogeneousComponent::from_fn(2, 2, 2, 1.0, |x| ComplexMatrix::from_fn(2, 2, |i, j| x[(i, j)] * x[(i, j)]));
    match linearize(&square, &mut model, 1e-9) {
        Err(HoloError::LinearizationMismatch { witness, residual }) => {
            println!("entrywise square is not T(x²): residual {residual:.3} at {witness:?}")
        }
        other => println!("unexpected: {other:?}"),
    }
}
