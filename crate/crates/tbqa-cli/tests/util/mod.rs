//! Helpers for driving the `tbqa` binary in tests.

use std::path::{Path, PathBuf};
use std::process::Output;

pub struct Run {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn tbqa(dir: &Path, args: &[&str]) -> Run {
    let output: Output = std::process::Command::new(env!("CARGO_BIN_EXE_tbqa"))
        .args(args)
        .current_dir(dir)
        .env_remove("CI")
        .env_remove("TBQA_CONFIG_DIR")
        .output()
        .expect("spawning tbqa");
    Run {
        status: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
    }
}

pub fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).unwrap();
    }
    std::fs::write(&path, content).unwrap();
    path
}

/// A small guideline-conformant sentence.
pub const GOLD: &str = "# sent_id = s1\n\
1\tVelký\tvelký\tA\t2\tAtr\n\
2\tpes\tpes\tN\t3\tSb\n\
3\tštěká\tštěkat\tV\t0\tPred\n\
4\tna\tna\tR\t3\tAuxP\n\
5\tdvoře\tdvůr\tN\t4\tAdv\n\
6\t.\t.\tZ\t0\tAuxK\n\n";

/// Same text with one base-afun disagreement (token 5).
pub const ANN_ONE_LABEL_OFF: &str = "# sent_id = s1\n\
1\tVelký\tvelký\tA\t2\tAtr\n\
2\tpes\tpes\tN\t3\tSb\n\
3\tštěká\tštěkat\tV\t0\tPred\n\
4\tna\tna\tR\t3\tAuxP\n\
5\tdvoře\tdvůr\tN\t4\tAtr\n\
6\t.\t.\tZ\t0\tAuxK\n\n";

/// The timing ledger with all 32 set-up entries, datasets assigned per
/// the generated four-annotator design.
pub fn full_ledger_tsv() -> String {
    let data: [(&str, [(f64, f64); 4]); 4] = [
        ("no_supp", [(66.0, 150.0), (125.0, 231.0), (80.0, 140.0), (200.0, 280.0)]),
        ("rules", [(90.0, 156.0), (216.0, 252.0), (60.0, 150.0), (150.0, 180.0)]),
        ("annot", [(111.0, 130.0), (212.0, 205.0), (70.0, 180.0), (210.0, 230.0)]),
        ("rul_annot", [(80.0, 150.0), (200.0, 245.0), (50.0, 160.0), (180.0, 155.0)]),
    ];
    let annotators = ["a1", "a2", "a3", "a4"];
    let design = tbqa_core::generate_design(
        &annotators.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        4,
        8,
    )
    .unwrap();
    let mut out = String::from("annotator\ttask\tmode\tdataset\tminutes\n");
    for (task, values) in data {
        for (i, &(pre, scratch)) in values.iter().enumerate() {
            for (mode, minutes) in [
                (tbqa_core::Mode::PreParsed, pre),
                (tbqa_core::Mode::FromScratch, scratch),
            ] {
                let dataset = design
                    .rows
                    .iter()
                    .find(|r| r.annotator == annotators[i] && r.task == task && r.mode == mode)
                    .map(|r| r.dataset.clone())
                    .unwrap();
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    annotators[i], task, mode, dataset, minutes
                ));
            }
        }
    }
    out
}
