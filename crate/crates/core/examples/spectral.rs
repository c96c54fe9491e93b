//! Hermitian eigendecomposition and the spectral projections it yields.

use holomat::random::RandomModel;
use holomat::spectral::hermitian_eigendecomposition;
use holomat::ComplexMatrix;

fn main() {
    let a = RandomModel::new(7).hermitian(4);
    let dec = hermitian_eigendecomposition(&a).expect("Hermitian input");
    println!("eigenvalues: {:?}", dec.eigenvalues);
    println!("reconstruction error: {:.2e}", dec.reconstruct().distance(&a));

    let projections = dec.projections();
    for (i, p) in projections.iter().enumerate() {
        for (j, q) in projections.iter().enumerate().skip(i + 1) {
            println!("‖P{i}·P{j}‖ = {:.2e}", p.matmul(q).frobenius_norm());
        }
    }
    let sum = projections.iter().fold(ComplexMatrix::zeros(4, 4), |acc, p| &acc + p);
    println!("‖ΣPᵢ − I‖ = {:.2e}", sum.distance(&ComplexMatrix::identity(4)));

    // functional calculus: exp(a) through the eigenbasis
    let exp_a = dec.apply(f64::exp);
    println!("trace exp(a) = {:.6}", exp_a.trace().re);
    println!("Σ exp(λᵢ)    = {:.6}", dec.eigenvalues.iter().map(|l| l.exp()).sum::<f64>());
}
