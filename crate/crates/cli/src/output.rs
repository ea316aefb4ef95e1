use serde::Serialize;

/// Where and how results are printed.
pub struct Out {
    pub json: bool,
    digits: usize,
}

impl Out {
    pub fn new(json: bool, precision: Option<u32>) -> Self {
        // an f64 carries at most 17 meaningful digits
        let digits = precision.map_or(8, |p| p.min(17) as usize);
        Out { json, digits }
    }

    /// A real with the configured number of significant digits.
    pub fn real(&self, x: f64) -> String {
        if x == 0.0 || !x.is_finite() {
            return format!("{x}");
        }
        let e = x.abs().log10().floor() as i32;
        if (-4..15).contains(&e) {
            let decimals = (self.digits as i32 - 1 - e).max(0) as usize;
            format!("{x:.decimals$}")
        } else {
            format!("{x:.*e}", self.digits - 1)
        }
    }

    pub fn opt_real(&self, x: Option<f64>) -> String {
        x.map_or_else(|| "-".into(), |v| self.real(v))
    }

    /// Prints `value` as JSON, or the text rendering otherwise.
    pub fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string(value).expect("results serialize"));
        } else {
            let t = text();
            print!("{t}");
            if !t.ends_with('\n') {
                println!();
            }
        }
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}
