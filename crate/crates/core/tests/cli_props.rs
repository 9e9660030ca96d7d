mod common;

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::Parser;
use common::{arb_poly, arb_raw};
use proptest::prelude::*;
use symdiv::cli::{render, run_with, Cli, Format, InputSource, OperatorFile};
use symdiv::opalg::DivOp;

struct MapSource(HashMap<PathBuf, String>);

impl InputSource for MapSource {
    fn read(&self, path: &Path) -> Result<String, String> {
        self.0.get(path).cloned().ok_or_else(|| format!("{} not found", path.display()))
    }
}

fn run_text(args: &[&str], file: &str, format: Format) -> (String, i32) {
    let cli = Cli::try_parse_from(std::iter::once("symdiv").chain(args.iter().copied())).unwrap();
    let src = MapSource(HashMap::from([(PathBuf::from("op"), file.to_string())]));
    let (report, code) = run_with(&cli, &src);
    (render(&report, format), code)
}

fn arb_family() -> impl Strategy<Value = DivOp> {
    prop::collection::vec(arb_poly(3, 0, 2, 4), 1..=3).prop_map(DivOp::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divergence_files_round_trip(d in arb_family()) {
        let f = OperatorFile::from_div(&d);
        let back: OperatorFile = f.emit().parse().unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_div_op().unwrap(), d);
    }

    #[test]
    fn raw_files_round_trip(l in arb_raw(4, 3)) {
        let f = OperatorFile::from_raw(&l);
        let back: OperatorFile = f.emit().parse().unwrap();
        prop_assert_eq!(back.to_raw_op(), l);
    }

    #[test]
    fn reports_are_deterministic(d in arb_family(), n in 1u32..=2) {
        let text = OperatorFile::from_div(&d).emit();
        let n = n.to_string();
        let args = ["power", "--n", n.as_str(), "op"];
        let first = run_text(&args, &text, Format::Json);
        let second = run_text(&args, &text, Format::Json);
        prop_assert_eq!(&first, &second);
        let value: serde_json::Value = serde_json::from_str(&first.0).unwrap();
        prop_assert_eq!(value["command"].as_str(), Some("power"));
        prop_assert_eq!(value["inputs_digest"].as_str().map(str::len), Some(64));
    }

    #[test]
    fn digest_tracks_inputs(d in arb_family(), extra in 1i64..=5) {
        let a = OperatorFile::from_div(&d).emit();
        let b = format!("{a}\n# {extra}\n");
        let digest = |text: &str| {
            let (out, _) = run_text(&["to-raw", "op"], text, Format::Json);
            serde_json::from_str::<serde_json::Value>(&out).unwrap()["inputs_digest"].as_str().unwrap().to_string()
        };
        prop_assert_ne!(digest(&a), digest(&b));
        prop_assert_eq!(digest(&a), digest(&a));
    }
}
