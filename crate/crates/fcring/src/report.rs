//! Deterministic formatting helpers shared by the CLI and the reports.

use num_complex::Complex64;

/// Formats a float for human and machine output. Values within 1e-9 of an
/// integer print as that integer, everything else uses the shortest
/// round-trip representation. Deterministic for identical inputs.
pub fn fmt_f64(x: f64) -> String {
    let rounded = x.round();
    if (x - rounded).abs() < 1e-9 {
        // avoid "-0"
        let r = if rounded == 0.0 { 0.0 } else { rounded };
        format!("{r}")
    } else {
        format!("{x}")
    }
}

/// Formats a complex value as `a`, `bi` or `a+bi`.
pub fn fmt_c64(z: Complex64) -> String {
    let re = if (z.re.round() - z.re).abs() < 1e-9 {
        z.re.round()
    } else {
        z.re
    };
    let im = if (z.im.round() - z.im).abs() < 1e-9 {
        z.im.round()
    } else {
        z.im
    };
    let re = if re == 0.0 { 0.0 } else { re };
    let im = if im == 0.0 { 0.0 } else { im };
    if im == 0.0 {
        fmt_f64(re)
    } else if re == 0.0 {
        format!("{}i", fmt_f64(im))
    } else if im < 0.0 {
        format!("{}{}i", fmt_f64(re), fmt_f64(im))
    } else {
        format!("{}+{}i", fmt_f64(re), fmt_f64(im))
    }
}

/// One line of machine output: space-separated key=value fields with a
/// leading record type. Values must not contain spaces.
pub struct Record {
    line: String,
}

impl Record {
    pub fn new(kind: &str) -> Record {
        Record {
            line: format!("rec={kind}"),
        }
    }

    pub fn field(mut self, key: &str, value: impl AsRef<str>) -> Record {
        let value = value.as_ref();
        debug_assert!(
            !value.contains(' ') && !value.contains('\n'),
            "machine values must be atomic: {value:?}"
        );
        self.line.push(' ');
        self.line.push_str(key);
        self.line.push('=');
        self.line.push_str(if value.is_empty() { "-" } else { value });
        self
    }

    pub fn finish(self) -> String {
        self.line
    }
}
