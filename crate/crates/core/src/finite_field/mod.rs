//! The tower `𝔽_p ⊆ 𝔽_{p²} ⊆ …` with Conway generators.

mod conway;
mod elem;
mod field;

pub use conway::{conway_coeffs, conway_search, load_table, parse_table, MAX_CONWAY_DEGREE};
pub use elem::FqElem;
pub use field::{check_field, max_field_order, set_max_field_order};

use crate::error::Result;

/// The Conway polynomial `C_{p,n}` as text, highest degree first, e.g. `x^2+x+1`.
pub fn conway_poly_string(p: u64, n: u32) -> Result<String> {
    let c = conway_coeffs(p, n)?;
    let mut parts = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(match (a, i) {
            (_, 0) => a.to_string(),
            (1, _) => mono,
            _ => format!("{a}*{mono}"),
        });
    }
    Ok(parts.join("+"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u64, n: u32) -> FqElem {
        FqElem::generator(p, n).unwrap()
    }

    #[test]
    fn conway_strings() {
        assert_eq!(conway_poly_string(2, 1).unwrap(), "x+1");
        assert_eq!(conway_poly_string(2, 2).unwrap(), "x^2+x+1");
        assert_eq!(conway_poly_string(7, 1).unwrap(), "x+4");
    }

    #[test]
    fn dlog_examples() {
        let g4 = g(2, 2);
        assert_eq!(g4.dlog().unwrap(), 1);
        let g_plus_1 = g4 + FqElem::one(2);
        assert_eq!(g_plus_1.dlog().unwrap(), 2);
        assert_eq!(FqElem::one(2).dlog().unwrap(), 0);
        assert!(FqElem::zero(2).dlog().is_err());
        assert_eq!(FqElem::from_int(7, 3), g(7, 1));
    }

    #[test]
    fn embed_examples() {
        let one = FqElem::one(2).embed(2).unwrap();
        assert_eq!(one, FqElem::one(2));
        let g4 = g(2, 2);
        let img = g4.embed(4).unwrap();
        assert_eq!(img.ambient_degree(), 4);
        assert_eq!(img.dlog_in(4).unwrap(), 5);
        assert_eq!(img, g(2, 4).pow(5));
        // C_{2,2}(g16^5) = 0.
        let v = img * img + img + FqElem::one(2);
        assert!(v.is_zero());
        assert!(FqElem::zero(3).embed(5).unwrap().is_zero());
        assert!(g4.embed(3).is_err());
    }

    #[test]
    fn canonicalization_and_dlog_laws() {
        for (p, n) in [(2u64, 4u32), (2, 6), (3, 4), (7, 2)] {
            let els = FqElem::elements(p, n).unwrap();
            let q1 = p.pow(n) - 1;
            for a in els.iter().skip(1).step_by(3) {
                for b in els.iter().skip(1).step_by(5) {
                    let lhs = (*a * *b).dlog_in(n).unwrap();
                    let rhs = (a.dlog_in(n).unwrap() + b.dlog_in(n).unwrap()) % q1;
                    assert_eq!(lhs, rhs);
                }
                let m = a.degree();
                assert_eq!(n % m, 0);
                assert_eq!(a.pow(p.pow(m)), *a);
            }
        }
    }

    #[test]
    fn bsgs_path() {
        // 2^17 is above the table threshold, so dlog runs baby-step giant-step.
        let g17 = g(2, 17);
        let a = g17.pow(12345);
        assert_eq!(a.dlog().unwrap(), 12345);
    }

    #[test]
    fn parse_and_display() {
        let a: FqElem = "fq(7,1,[3])".parse().unwrap();
        assert_eq!(a.to_string(), "fq(7,1,[3])");
        let b: FqElem = "fq(2,4,[0,1,1,0])".parse().unwrap();
        assert_eq!(b.degree(), 2);
        assert!("fq(4,1,[1])".parse::<FqElem>().is_err());
    }
}
