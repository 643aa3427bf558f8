//! JSON and CSV rendering of reports.

use num_complex::Complex64;

use crate::run::Report;

pub const CSV_HEADER: [&str; 8] = ["q", "x_re", "x_im", "value_re", "value_im", "method", "terms_used", "rel_error"];

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

/// Real q prints as a number, complex q as `re+imi`.
fn format_q(q: Complex64) -> String {
    if q.im == 0.0 {
        q.re.to_string()
    } else {
        q.to_string()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn render_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for r in &report.rows {
        w.write_record([
            format_q(r.q),
            r.x.re.to_string(),
            r.x.im.to_string(),
            r.value.re.to_string(),
            r.value.im.to_string(),
            opt(r.method),
            opt(r.terms_used),
            opt(r.rel_error),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}
