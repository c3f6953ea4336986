//! Parsing of numeric flag values: comma-separated lists whose items are
//! single values or inclusive `start:stop:count` ranges.

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

fn parse_item(item: &str, out: &mut Vec<f64>) -> Result<(), String> {
    let parts: Vec<&str> = item.split(':').collect();
    match parts.as_slice() {
        [single] => out.push(parse_real(single)?),
        [start, stop, count] => {
            let start = parse_real(start)?;
            let stop = parse_real(stop)?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("range count `{count}` is not a positive integer"))?;
            if count < 2 {
                return Err(format!("range count must be at least 2, got {count}"));
            }
            let step = (stop - start) / (count - 1) as f64;
            out.extend((0..count - 1).map(|i| start + step * i as f64));
            out.push(stop);
        }
        _ => return Err(format!("`{item}` is neither a value nor start:stop:count")),
    }
    Ok(())
}

/// Parses `1,2.5,0:10:11`-style lists.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Err("empty value list".into());
    }
    let mut out = Vec::new();
    for item in s.split(',') {
        parse_item(item, &mut out)?;
    }
    Ok(out)
}

/// Like [`parse_values`] but every value must be a positive integer.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, String> {
    parse_values(s)?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(format!("dimension `{v}` is not a positive integer"))
            }
        })
        .collect()
}

/// A parsed `--theta`/`--c` style list.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueList(pub Vec<f64>);

/// A parsed list of dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimList(pub Vec<usize>);

impl std::ops::Deref for ValueList {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Deref for DimList {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

pub fn value_list(s: &str) -> Result<ValueList, String> {
    parse_values(s).map(ValueList)
}

pub fn dim_list(s: &str) -> Result<DimList, String> {
    parse_dims(s).map(DimList)
}
