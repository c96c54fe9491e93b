//! Spec and matrix documents, plus a CLI-style report produced in-process.

use holomat::cli::{self, Command, RunConfig};
use holomat::format::{matrix_from_text, matrix_to_text, read_spec, write_spec};
use holomat::holo::StandardFormSpec;
use holomat::random::{random_similarity, RandomModel};
use holomat::Complex64;

fn main() {
    let dir = std::env::temp_dir().join("holomat-formats-example");
    std::fs::create_dir_all(&dir).unwrap();

    let s = random_similarity(&mut RandomModel::new(9), 2, 10.0);
    let text = matrix_to_text(&s);
    println!("{text}");
    assert_eq!(matrix_from_text(&text).unwrap(), s);

    let spec = StandardFormSpec::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.5)], s, false, 1.0).unwrap();
    let path = dir.join("spec.json");
    write_spec(&path, &spec).unwrap();
    let back = read_spec(&path).unwrap();
    println!("spec round trip exact: {}", back.similarity() == spec.similarity() && back.lambdas() == spec.lambdas());

    match matrix_from_text("{\"rows\": 1, \"cols\": 1, \"re\": [[1.0]], \"im\": [[\"oops\"]]}") {
        Err(e) => println!("bad document: {e}"),
        Ok(_) => unreachable!(),
    }

    let mut config = RunConfig::new(Command::Extract, path.to_string_lossy());
    config.n_max = 3;
    let out = cli::run(&config);
    println!("extract exit code {}; report has {} bytes", out.exit_code, out.report.len());
    println!("{}", out.report.lines().take(20).collect::<Vec<_>>().join("\n"));
}
