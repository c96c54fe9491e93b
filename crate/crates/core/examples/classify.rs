//! Full classification of a holomorphic function given only as a black box.

use holomat::format::to_text;
use holomat::random::{random_similarity, RandomModel};
use holomat::structure::{classify_holomorphic, ClassifyParams};
use holomat::{ComplexMatrix, HoloFunction};

fn main() {
    let s = random_similarity(&mut RandomModel::new(5), 3, 40.0);
    let s_inv = s.inverse().unwrap();
    // H(x) = S⁻¹ (exp(xᵗ) − 1) S, series summed to double precision
    let h = HoloFunction::new("exp(xᵗ)-1", 3, 3, 1.0, move |x| {
        let y = x.transpose();
        let mut term = y.clone();
        let mut acc = ComplexMatrix::zeros(3, 3);
        for n in 1..40 {
            acc = &acc + &term;
            term = term.matmul(&y).scale_real(1.0 / (n + 1) as f64);
        }
        s_inv.matmul(&acc).matmul(&s)
    });

    match classify_holomorphic(&h, &ClassifyParams::default()) {
        Ok(c) => {
            println!("tag {:?}, anchor degree {:?}", c.tag, c.k_anchor);
            let mut factorial = 1.0;
            for (n, l) in c.lambdas.iter().enumerate() {
                factorial *= (n + 1) as f64;
                println!("  λ{} = {:+.3e}   1/{}! = {:.3e}", n + 1, l, n + 1, 1.0 / factorial);
            }
            println!("reconstruction residual {:.2e}", c.report.reconstruction_residual.unwrap());
            let w = c.report.zero_product.as_ref().and_then(|v| v.witness.as_ref()).unwrap();
            println!("zero-product witness (ab = 0, H(a)H(b) ≠ 0):\n{}", to_text(w));
        }
        Err(e) => println!("classification failed: {e}"),
    }

    // Too few degrees: the reconstruction check sees the neglected tail.
    let short = ClassifyParams {
        n_max: 4,
        ..ClassifyParams::default()
    };
    if let Err(e) = classify_holomorphic(&h, &short) {
        println!("with n_max = 4: {e}");
    }
}
