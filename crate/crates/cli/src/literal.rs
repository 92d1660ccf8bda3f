//! Class literals: `;`-separated parts, each a parenthesized integer vector.
//! A global class is its abelianized coordinates followed, when the model has
//! real places, by one fiber vector per real place: `(1,0);(1),(0)`.

use galcoh::globalcoh::{FiberPoint, GlobalAbGroup, GlobalClass};
use galcoh::GroupElement;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::CliError;

fn err(s: &str, msg: &str) -> CliError {
    CliError::Input(format!("class literal `{s}`: {msg}"))
}

/// `"(1,-2)"`, `"1,-2"`, `"()"` or `""`.
pub fn parse_vector(s: &str) -> Result<Vec<BigInt>, CliError> {
    let t = s.trim();
    let inner = match (t.strip_prefix('('), t.strip_suffix(')')) {
        (Some(_), Some(_)) => &t[1..t.len() - 1],
        (None, None) => t,
        _ => return Err(err(s, "unbalanced parentheses")),
    };
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| err(s, &format!("`{}` is not an integer", x.trim())))
        })
        .collect()
}

/// Splits `"(1),(0,2)"` into its parenthesized groups.
fn parse_groups(s: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err(s, "expected `(`"));
        }
        let close = rest.find(')').ok_or_else(|| err(s, "missing `)`"))?;
        out.push(parse_vector(&rest[..=close])?);
        rest = rest[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(err(s, "trailing comma"));
            }
        } else if !rest.is_empty() {
            return Err(err(s, "expected `,` between fiber vectors"));
        }
    }
    Ok(out)
}

/// Abelianized part and optional fiber vectors.
pub fn parse_class(s: &str) -> Result<(Vec<BigInt>, Option<Vec<Vec<BigInt>>>), CliError> {
    match s.split_once(';') {
        None => Ok((parse_vector(s)?, None)),
        Some((ab, inf)) => Ok((parse_vector(ab)?, Some(parse_groups(inf)?))),
    }
}

pub fn format_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn format_point(p: &FiberPoint) -> String {
    match p {
        FiberPoint::Torus(x) => format_vector(x),
        FiberPoint::Abstract(i) => format!("({i})"),
    }
}

pub fn format_class(x: &GlobalClass) -> String {
    let ab = format_vector(&x.ab);
    if x.inf.is_empty() {
        ab
    } else {
        let inf: Vec<String> = x.inf.iter().map(format_point).collect();
        format!("{ab};{}", inf.join(","))
    }
}

/// Resolves a literal against a global model. Without fiber vectors the unique
/// compatible fiber tuple is used.
pub fn global_class(gab: &GlobalAbGroup, s: &str) -> Result<GlobalClass, CliError> {
    let (ab, inf) = parse_class(s)?;
    if ab.len() != gab.group.ngens() {
        return Err(err(
            s,
            &format!("the global group needs {} coordinates", gab.group.ngens()),
        ));
    }
    let ab: GroupElement = gab.group.reduce(ab);
    let inf = match inf {
        None => {
            let mut tuples = gab.compatible_fibers(&ab);
            match tuples.len() {
                0 => return Err(err(s, "no compatible fiber tuple")),
                1 => tuples.pop().expect("one tuple"),
                n => {
                    return Err(err(
                        s,
                        &format!("{n} compatible fiber tuples; give one after `;`"),
                    ))
                }
            }
        }
        Some(vs) => {
            if vs.len() != gab.fibers.len() {
                return Err(err(
                    s,
                    &format!("{} real places need fiber vectors", gab.fibers.len()),
                ));
            }
            vs.into_iter()
                .zip(&gab.fibers)
                .map(|(v, f)| match f {
                    galcoh::globalcoh::ArchFiber::Torus(h) => {
                        Ok(FiberPoint::Torus(if v.len() == h.group.ngens() {
                            h.group.reduce(v)
                        } else {
                            v
                        }))
                    }
                    galcoh::globalcoh::ArchFiber::Abstract { .. } => match v.as_slice() {
                        [i] => i
                            .to_usize()
                            .map(FiberPoint::Abstract)
                            .ok_or_else(|| err(s, "fiber point index out of range")),
                        _ => Err(err(s, "an abstract fiber point is a single index")),
                    },
                })
                .collect::<Result<_, _>>()?
        }
    };
    Ok(gab.make_class(ab, inf)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use galcoh::intlat::int_vec;

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("(1, -2)").unwrap(), int_vec(&[1, -2]));
        assert_eq!(parse_vector("3").unwrap(), int_vec(&[3]));
        assert!(parse_vector("()").unwrap().is_empty());
        assert!(parse_vector("(1").is_err());
        assert!(parse_vector("(a)").is_err());
    }

    #[test]
    fn classes() {
        let (ab, inf) = parse_class("1;(1),(0)").unwrap();
        assert_eq!(ab, int_vec(&[1]));
        assert_eq!(inf.unwrap(), vec![int_vec(&[1]), int_vec(&[0])]);
        assert!(parse_class("(1,1,1)").unwrap().1.is_none());
        assert!(parse_class("1;(1)(0)").is_err());
        assert!(parse_class("1;(1),").is_err());
    }

    #[test]
    fn format_round_trip() {
        let x = GlobalClass {
            ab: int_vec(&[1, 0]),
            inf: vec![FiberPoint::Abstract(1), FiberPoint::Torus(int_vec(&[0]))],
        };
        let s = format_class(&x);
        assert_eq!(s, "(1,0);(1),(0)");
        let (ab, inf) = parse_class(&s).unwrap();
        assert_eq!(ab, x.ab);
        assert_eq!(inf.unwrap().len(), 2);
    }
}
