//! Grid mini-language: `log:a:b:n`, `lin:a:b:n`, or a comma list of numbers.

use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Log { lo: f64, hi: f64, n: usize },
    Lin { lo: f64, hi: f64, n: usize },
    List(Vec<f64>),
}

fn number(field: &str, s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("{field}: {s:?} is not a number"))
}

impl GridSpec {
    /// Parses a spec; every point must be finite and strictly positive.
    pub fn parse(field: &str, spec: &str) -> Result<Self, String> {
        let parts: Vec<&str> = spec.split(':').collect();
        let grid = match parts.as_slice() {
            [kind @ ("log" | "lin"), a, b, n] => {
                let (lo, hi) = (number(field, a)?, number(field, b)?);
                let n = usize::from_str(n.trim())
                    .map_err(|_| format!("{field}: point count {n:?} is not a positive integer"))?;
                if n == 0 {
                    return Err(format!("{field}: point count must be >= 1"));
                }
                if !(lo <= hi) {
                    return Err(format!("{field}: need a <= b in {spec:?}"));
                }
                if *kind == "log" {
                    GridSpec::Log { lo, hi, n }
                } else {
                    GridSpec::Lin { lo, hi, n }
                }
            }
            [single] => GridSpec::List(single.split(',').map(|v| number(field, v)).collect::<Result<_, _>>()?),
            _ => return Err(format!("{field}: expected log:a:b:n, lin:a:b:n or a comma list, got {spec:?}")),
        };
        if let Some(bad) = grid.points().into_iter().find(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(format!("{field}: grid points must be finite and > 0, got {bad}"));
        }
        Ok(grid)
    }

    pub fn points(&self) -> Vec<f64> {
        let spaced = |lo: f64, hi: f64, n: usize, f: &dyn Fn(f64) -> f64| -> Vec<f64> {
            if n == 1 {
                return vec![lo];
            }
            let mut v: Vec<f64> = (0..n).map(|k| f(k as f64 / (n - 1) as f64)).collect();
            // pin the ends exactly
            v[0] = lo;
            v[n - 1] = hi;
            v
        };
        match *self {
            GridSpec::Log { lo, hi, n } => {
                if !(lo > 0.0) {
                    return vec![lo];
                }
                let (a, b) = (lo.ln(), hi.ln());
                spaced(lo, hi, n, &|u| (a + (b - a) * u).exp())
            }
            GridSpec::Lin { lo, hi, n } => spaced(lo, hi, n, &|u| lo + (hi - lo) * u),
            GridSpec::List(ref v) => v.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_forms() {
        let g = GridSpec::parse("x", "log:0.01:10:4").unwrap().points();
        assert_eq!(g.len(), 4);
        assert_eq!((g[0], g[3]), (0.01, 10.0));
        assert!((g[1] - 0.1).abs() < 1e-15);
        assert_eq!(GridSpec::parse("t", "lin:1:2:3").unwrap().points(), vec![1.0, 1.5, 2.0]);
        assert_eq!(GridSpec::parse("t", "0.5,2").unwrap().points(), vec![0.5, 2.0]);
        assert_eq!(GridSpec::parse("t", "0.5").unwrap().points(), vec![0.5]);
    }

    #[test]
    fn rejects_bad_specs_naming_the_field() {
        for bad in ["log:0:1:5", "lin:-1:1:3", "log:1:2:0", "log:2:1:3", "cube:1:2:3", "1,x", "inf"] {
            let e = GridSpec::parse("x-grid", bad).unwrap_err();
            assert!(e.starts_with("x-grid:"), "{bad}: {e}");
        }
    }
}
