//! Recovering the symmetric multilinear form behind a homogeneous polynomial.

use holomat::holo::{polarize, StandardFormSpec};
use holomat::random::RandomModel;
use holomat::{Complex64, ComplexMatrix};

fn main() {
    let spec = StandardFormSpec::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], ComplexMatrix::identity(2), false, 1.0).unwrap();
    let p = spec.component(2);
    let t = polarize(&p).unwrap();

    // For P(x) = x², T(a, b) = (ab + ba)/2.
    let mut model = RandomModel::new(1);
    let (a, b) = (model.ginibre(2, 2), model.ginibre(2, 2));
    let expected = (&a.matmul(&b) + &b.matmul(&a)).scale_real(0.5);
    let got = t.evaluate(&[a.clone(), b.clone()]).unwrap();
    println!("‖T(a,b) − (ab+ba)/2‖ = {:.2e}", got.distance(&expected));
    println!("‖T(a,b) − T(b,a)‖    = {:.2e}", got.distance(&t.evaluate(&[b, a.clone()]).unwrap()));
    println!("‖T(a,a) − P(a)‖      = {:.2e}", t.evaluate(&[a.clone(), a.clone()]).unwrap().distance(&p.evaluate(&a).unwrap()));

    let e12 = ComplexMatrix::unit(2, 0, 1);
    let e21 = ComplexMatrix::unit(2, 1, 0);
    println!("T(E12, E21) = {:?}", t.evaluate(&[e12, e21]).unwrap());
}
