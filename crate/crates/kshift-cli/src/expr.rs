//! Expression language for the `abgrp-eval` verb:
//!
//! ```text
//! expr := NAME '(' expr (',' arg)* ')' | literal
//! NAME := sum | tensor | tor | localize
//! ```
//!
//! Literals are abelian-group displays (`Z + Z/4 + Q[2^inf]/Z`); the
//! second argument of `localize` is a supernatural literal.

use kshift::abgrp::{AbGroup, Saturation};
use kshift::error::{Error, Result};
use kshift::supernat::Supernatural;

pub fn eval(text: &str) -> Result<AbGroup> {
    let text = text.trim();
    if let Some((name, rest)) = text.split_once('(') {
        let name = name.trim();
        if matches!(name, "sum" | "tensor" | "tor" | "localize") {
            let rest = rest.trim_end();
            let Some(body) = rest.strip_suffix(')') else {
                return Err(Error::Parse(format!("missing ')' in {text:?}")));
            };
            let args = split_top_level(body)?;
            return apply(name, &args);
        }
    }
    AbGroup::parse(text)
}

fn apply(name: &str, args: &[&str]) -> Result<AbGroup> {
    match name {
        "sum" | "tensor" | "tor" => {
            if args.len() != 2 {
                return Err(Error::Parse(format!("{name} takes exactly 2 arguments")));
            }
            let a = eval(args[0])?;
            let b = eval(args[1])?;
            Ok(match name {
                "sum" => a.direct_sum(&b),
                "tensor" => a.tensor(&b),
                _ => a.tor(&b),
            })
        }
        "localize" => {
            if args.len() != 2 {
                return Err(Error::Parse("localize takes (expr, supernatural)".into()));
            }
            let a = eval(args[0])?;
            let n = Supernatural::parse(args[1])?;
            a.localize(&n, Saturation::Strict)
        }
        _ => Err(Error::Parse(format!("unknown operation {name:?}"))),
    }
}

fn split_top_level(body: &str) -> Result<Vec<&str>> {
    let mut args = vec![];
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced ')' in {body:?}")))?;
            }
            ',' if depth == 0 => {
                args.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {body:?}")));
    }
    args.push(body[start..].trim());
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_calls() {
        assert_eq!(eval("Z + Z/4").unwrap().to_string(), "Z + Z/2^2");
        assert_eq!(
            eval("tensor(Q[2^inf], Q[2^inf*3^inf]/Z)").unwrap().to_string(),
            "Q[3^inf]/Z"
        );
        assert_eq!(
            eval("sum(tor(Q[2^inf]/Z, Q[6^inf]/Z), Z)").unwrap().to_string(),
            "Z + Q[2^inf]/Z"
        );
        assert_eq!(eval("localize(Z + Z/8, 2^inf)").unwrap().to_string(), "Q[2^inf]");
        assert!(eval("frobnicate(Z, Z)").is_err());
        assert!(eval("tensor(Z)").is_err());
        assert!(eval("tensor(Z, Z").is_err());
    }
}
