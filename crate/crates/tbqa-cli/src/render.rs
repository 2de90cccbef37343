//! Table and plot-series rendering shared by the subcommands.

use tbqa_core::{AgreementResult, BootstrapResult, PermutationResult, ScoreReport};

/// One x/y series for plotting, named `section/qualifiers`.
pub struct Series {
    pub name: String,
    pub points: Vec<(String, f64)>,
}

/// Series blocks: a `# series:` header line, `x<TAB>y` rows, blank line
/// between blocks.
pub fn render_series(series: &[Series]) -> String {
    let mut out = String::new();
    for s in series {
        out.push_str(&format!("# series: {}\n", s.name));
        for (x, y) in &s.points {
            out.push_str(&format!("{x}\t{y}\n"));
        }
        out.push('\n');
    }
    out
}

pub fn score_table_header() -> String {
    format!("{:<24} {:>7} {:>7} {:>7}", "file", "UAS", "LAS", "FULL")
}

pub fn score_table_row(name: &str, report: &ScoreReport) -> String {
    format!(
        "{:<24} {:>7.1} {:>7.1} {:>7.1}",
        name, report.uas, report.las, report.full
    )
}

pub fn mean_row(name: &str, uas: f64, las: f64, full: f64) -> String {
    format!("{name:<24} {uas:>7.1} {las:>7.1} {full:>7.1}")
}

pub fn kappa_table_header() -> String {
    format!(
        "{:<12} {:>7} {:>8} {:>8} {:>6} {:>6} {:>6} {:>6} {:>7}",
        "kind", "kappa", "p0", "pe", "aP", "aL", "aF", "n", "s_bar"
    )
}

pub fn kappa_table_row(label: &str, r: &AgreementResult) -> String {
    format!(
        "{:<12} {:>7.4} {:>8.4} {:>8.4} {:>6} {:>6} {:>6} {:>6} {:>7}",
        label,
        r.kappa,
        r.p0,
        r.pe,
        r.a_p,
        r.a_l,
        r.a_f,
        r.n,
        r.s_bar.map_or("-".to_string(), |s| format!("{s:.2}"))
    )
}

/// `96.5 ±0.46` on the percent scale.
pub fn score_pm(b: &BootstrapResult) -> String {
    format!("{:.1} ±{:.2}", 100.0 * b.statistic, 100.0 * b.stddev)
}

/// `p=30.9%`, or `p<0.1%` below one permille.
pub fn p_value_pct(p: &PermutationResult) -> String {
    if p.p_value < 0.001 {
        "p<0.1%".to_string()
    } else {
        format!("p={:.1}%", 100.0 * p.p_value)
    }
}
