use std::str::FromStr;

/// Inclusive `a..b` ranges and comma lists, e.g. `0..5` or `0,2,4..6`.
/// Sorted and deduplicated.
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty entry in list `{s}`"));
        }
        if let Some((a, b)) = part.split_once("..") {
            let a = parse_num::<u32>(a, part)?;
            let b = parse_num::<u32>(b.trim_start_matches('='), part)?;
            if b < a {
                return Err(format!("range `{part}` is empty"));
            }
            out.extend(a..=b);
        } else {
            out.push(parse_num(part, part)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_num<T: FromStr>(s: &str, ctx: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("`{ctx}` is not a valid non-negative integer list entry"))
}

/// `min:max:steps` with `0 < min < max` and `steps ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl ZRange {
    pub fn grid(&self) -> Vec<f64> {
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + h * i as f64 })
            .collect()
    }
}

impl FromStr for ZRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("expected min:max:steps, got `{s}`"));
        };
        let min: f64 = min.trim().parse().map_err(|_| format!("bad z minimum `{min}`"))?;
        let max: f64 = max.trim().parse().map_err(|_| format!("bad z maximum `{max}`"))?;
        let steps: usize = steps.trim().parse().map_err(|_| format!("bad step count `{steps}`"))?;
        if !(min > 0.0 && min.is_finite() && max.is_finite() && max > min) {
            return Err(format!("need 0 < min < max, got {min}:{max}"));
        }
        if steps < 2 {
            return Err(format!("need at least 2 steps, got {steps}"));
        }
        Ok(Self { min, max, steps })
    }
}

pub fn parse_nonneg_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a finite value >= 0, got `{s}`")),
    }
}

pub fn parse_pos_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a finite value > 0, got `{s}`")),
    }
}
