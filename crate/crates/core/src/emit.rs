//! Deterministic machine-readable output. Floats are printed with a fixed
//! number of significant digits — 17 for JSON and CSV (lossless for f64),
//! 12 for text — so identical inputs always produce byte-identical output.

use crate::bch::BchReport;
use crate::dense::DenseOperator;
use crate::ontology::LeakageSweep;
use crate::pauli::PauliSum;
use crate::permops::GeneralizedPermutation;

/// 17 significant digits, scientific; valid as a JSON number.
pub fn json_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// 12 significant digits for human-facing text.
pub fn text_f64(x: f64) -> String {
    format!("{x:.11e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_usize_list(values: &[usize]) -> String {
    let body: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", body.join(","))
}

fn json_f64_list(values: &[f64]) -> String {
    let body: Vec<String> = values.iter().map(|&v| json_f64(v)).collect();
    format!("[{}]", body.join(","))
}

/// `{dim, target, phase}`.
pub fn permutation_json(p: &GeneralizedPermutation) -> String {
    format!(
        "{{\"dim\":{},\"target\":{},\"phase\":{}}}",
        p.dim(),
        json_usize_list(p.target()),
        json_f64_list(p.phase())
    )
}

/// `{dim, entries}` with entries as row-major `[re, im]` pairs.
pub fn dense_json(m: &DenseOperator) -> String {
    let mut entries = Vec::with_capacity(m.dim() * m.dim());
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            let v = m[(r, c)];
            entries.push(format!("[{},{}]", json_f64(v.re), json_f64(v.im)));
        }
    }
    format!(
        "{{\"dim\":{},\"entries\":[{}]}}",
        m.dim(),
        entries.join(",")
    )
}

/// Row-major CSV, one matrix row per line, cells alternating re, im.
pub fn dense_csv(m: &DenseOperator) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..m.dim())
        .flat_map(|c| [format!("re{c}"), format!("im{c}")])
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for r in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .flat_map(|c| {
                let v = m[(r, c)];
                [json_f64(v.re), json_f64(v.im)]
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `{n_sites, terms: [{string, re, im}, …]}`, strings in lexicographic order.
pub fn pauli_sum_json(sum: &PauliSum) -> String {
    let terms: Vec<String> = sum
        .terms()
        .map(|(string, coeff)| {
            format!(
                "{{\"string\":{},\"re\":{},\"im\":{}}}",
                json_string(&string.to_string()),
                json_f64(coeff.re),
                json_f64(coeff.im)
            )
        })
        .collect();
    format!(
        "{{\"n_sites\":{},\"terms\":[{}]}}",
        sum.n_sites(),
        terms.join(",")
    )
}

pub fn pauli_sum_csv(sum: &PauliSum) -> String {
    let mut out = String::from("string,re,im\n");
    for (string, coeff) in sum.terms() {
        out.push_str(&format!(
            "{},{},{}\n",
            string,
            json_f64(coeff.re),
            json_f64(coeff.im)
        ));
    }
    out
}

pub fn pauli_sum_text(sum: &PauliSum) -> String {
    if sum.is_empty() {
        return format!("empty sum on {} sites\n", sum.n_sites());
    }
    let mut out = String::new();
    for (string, coeff) in sum.terms() {
        out.push_str(&format!(
            "{}  {}  {}\n",
            string,
            text_f64(coeff.re),
            text_f64(coeff.im)
        ));
    }
    out
}

/// The spectrum summary a `spectrum` run emits.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub timescale: f64,
    pub method: String,
    /// Eigenvalues ascending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<(f64, usize)>,
    pub cycle_type: Vec<usize>,
    /// Max-norm disagreement between the selected extraction route and the
    /// other one; `None` when the check was skipped for size.
    pub cross_check_max_diff: Option<f64>,
}

pub fn spectrum_json(report: &SpectrumReport) -> String {
    let mult: Vec<String> = report
        .multiplicities
        .iter()
        .map(|&(level, count)| format!("[{},{}]", json_f64(level), count))
        .collect();
    let cross = match report.cross_check_max_diff {
        Some(v) => json_f64(v),
        None => "null".to_string(),
    };
    format!(
        "{{\"timescale\":{},\"method\":{},\"eigenvalues\":{},\"multiplicities\":[{}],\"cycle_type\":{},\"cross_check_max_diff\":{}}}",
        json_f64(report.timescale),
        json_string(&report.method),
        json_f64_list(&report.eigenvalues),
        mult.join(","),
        json_usize_list(&report.cycle_type),
        cross
    )
}

pub fn spectrum_csv(report: &SpectrumReport) -> String {
    let mut out = String::from("eigenvalue,multiplicity\n");
    for &(level, count) in &report.multiplicities {
        out.push_str(&format!("{},{}\n", json_f64(level), count));
    }
    out
}

pub fn spectrum_text(report: &SpectrumReport) -> String {
    let mut out = String::new();
    let cross = match report.cross_check_max_diff {
        Some(v) => format!("cross-check diff {}", text_f64(v)),
        None => "cross-check skipped".to_string(),
    };
    out.push_str(&format!("method: {} ({cross})\n", report.method));
    out.push_str(&format!("cycle type: {:?}\n", report.cycle_type));
    out.push_str("eigenvalue  multiplicity\n");
    for &(level, count) in &report.multiplicities {
        out.push_str(&format!("{}  {}\n", text_f64(level), count));
    }
    out
}

pub fn bch_json(report: &BchReport) -> String {
    let terms = match report.terms_evaluated {
        Some(n) => n.to_string(),
        None => "null".to_string(),
    };
    format!(
        "{{\"identity\":{},\"max_abs_diff\":{},\"dims\":{},\"terms_evaluated\":{}}}",
        json_string(report.identity.name()),
        json_f64(report.max_abs_diff),
        report.dim(),
        terms
    )
}

pub fn leakage_csv(sweep: &LeakageSweep) -> String {
    let mut out = String::from("epsilon,source,dominant,leakage\n");
    for r in &sweep.reports {
        out.push_str(&format!(
            "{},{},{},{}\n",
            json_f64(r.epsilon),
            bit_label(r.source_state, sweep.n_spins),
            bit_label(r.dominant_state, sweep.n_spins),
            json_f64(r.leakage)
        ));
    }
    match sweep.fitted_slope {
        Some(slope) => out.push_str(&format!("# fitted_slope={}\n", json_f64(slope))),
        None => out.push_str("# fitted_slope=n/a\n"),
    }
    out
}

pub fn leakage_json(sweep: &LeakageSweep) -> String {
    let rows: Vec<String> = sweep
        .reports
        .iter()
        .map(|r| {
            format!(
                "{{\"epsilon\":{},\"source\":{},\"dominant\":{},\"dominant_prob\":{},\"leakage\":{}}}",
                json_f64(r.epsilon),
                json_string(&bit_label(r.source_state, sweep.n_spins)),
                json_string(&bit_label(r.dominant_state, sweep.n_spins)),
                json_f64(r.dominant_prob),
                json_f64(r.leakage)
            )
        })
        .collect();
    let slope = match sweep.fitted_slope {
        Some(s) => json_f64(s),
        None => "null".to_string(),
    };
    format!(
        "{{\"generator\":{},\"n_spins\":{},\"reports\":[{}],\"fitted_slope\":{}}}",
        json_string(&sweep.generator.to_string()),
        sweep.n_spins,
        rows.join(","),
        slope
    )
}

pub fn leakage_text(sweep: &LeakageSweep) -> String {
    let mut out = format!("generator: {}\n", sweep.generator);
    out.push_str("epsilon  source  dominant  leakage\n");
    for r in &sweep.reports {
        out.push_str(&format!(
            "{}  {}  {}  {}\n",
            text_f64(r.epsilon),
            bit_label(r.source_state, sweep.n_spins),
            bit_label(r.dominant_state, sweep.n_spins),
            text_f64(r.leakage)
        ));
    }
    match sweep.fitted_slope {
        Some(slope) => out.push_str(&format!("fitted slope: {}\n", text_f64(slope))),
        None => out.push_str("fitted slope: n/a\n"),
    }
    out
}

fn bit_label(index: usize, n_spins: usize) -> String {
    (0..n_spins)
        .map(|k| {
            if (index >> (n_spins - 1 - k)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}
