//! Classifying linear maps that kill products of orthogonal projections.

use holomat::holo::LinearMapMatrix;
use holomat::random::{random_similarity, RandomModel};
use holomat::structure::{classify_linear_map, detect_antihomomorphism, Tolerances};
use holomat::{Complex64, ComplexMatrix};

fn main() {
    let mut model = RandomModel::new(21);
    let s = random_similarity(&mut model, 4, 100.0);
    let s_inv = s.inverse().unwrap();
    let lambda = Complex64::new(-1.5, 0.5);

    for transpose in [false, true] {
        let theta = LinearMapMatrix::from_fn(4, 4, |e| {
            let y = if transpose { e.transpose() } else { e.clone() };
            s_inv.matmul(&y).matmul(&s).scale(lambda)
        });
        let anti = detect_antihomomorphism(&theta.scale(lambda.inv()), 1e-9).unwrap();
        let c = classify_linear_map(&theta, &mut model, &Tolerances::default()).unwrap();
        let recovered = c.similarity.as_ref().unwrap();
        // S is determined up to a scalar; compare after matching one entry
        let ratio = s[(0, 0)] / recovered[(0, 0)];
        println!(
            "transpose={transpose}: anti={anti} tag={:?} λ={:.6} ‖cS̃ − S‖/‖S‖={:.1e}",
            c.tag,
            c.lambda.unwrap(),
            recovered.scale(ratio).distance(&s) / s.frobenius_norm()
        );
    }

    let nilpotent = LinearMapMatrix::from_fn(3, 3, |e| ComplexMatrix::unit(3, 0, 2).scale(e.trace()));
    match classify_linear_map(&nilpotent, &mut model, &Tolerances::default()) {
        Ok(c) => println!("trace·E13: {:?}, flags {:?}", c.tag, c.evidence.flags),
        Err(e) => println!("trace·E13: {e}"),
    }
}
