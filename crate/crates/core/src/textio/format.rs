use crate::multivector::Multivector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Nonzero terms only, unit coefficients elided: `1 - e3`.
    Human,
    /// All four terms with explicit coefficients; parses back bit-exactly.
    Machine,
}

/// Shortest decimal that parses back to the same double.
///
/// Plain notation for magnitudes in `[1e-5, 1e16)`, scientific otherwise.
/// Negative zero prints as `0`. The decimal separator is always `.`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs();
    if (1e-5..1e16).contains(&mag) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

const BASIS: [&str; 4] = ["", "e1", "e2", "e3"];

pub fn format_mv(a: &Multivector, style: Style) -> String {
    let mut out = String::new();
    for (k, c) in a.coeffs().into_iter().enumerate() {
        if style == Style::Human && c == 0.0 {
            continue;
        }
        let negative = c < 0.0;
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = format_number(c.abs());
        match (k, style) {
            (0, _) => out.push_str(&mag),
            (_, Style::Human) if mag == "1" => out.push_str(BASIS[k]),
            _ => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(BASIS[k]);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
