//! Graded characters `ch_{M_c(tau)}(g, t) = chi_tau(g) t^{h_c(tau)} / det(1 - t g)`.

use std::fmt;

use crate::dunkl::DunklContext;
use crate::exact::{ParamScalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowestWeight {
    Trivial,
    Sign,
}

#[derive(Clone, Debug)]
pub struct VermaCharacter {
    pub tau: LowestWeight,
    pub element: usize,
    pub chi: i32,
    /// `h_c(tau) = dim/2 - sum_s c_s chi_tau(s)/chi_tau(1)`.
    pub h_c: ParamScalar,
    /// `det(1 - t g)`, coefficients increasing in `t`.
    pub det: Vec<Scalar>,
}

impl VermaCharacter {
    /// Coefficients of `chi / det(1 - t g)` up to `t^n`, excluding `t^{h_c}`.
    pub fn series(&self, n: usize) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = if k == 0 { Scalar::from_int(self.chi as i64) } else { Scalar::zero() };
            for (j, d) in self.det.iter().enumerate().skip(1).take(k) {
                v -= &(d * &out[k - j]);
            }
            out.push(v);
        }
        out
    }
}

fn render_poly_t(coeffs: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let body = if k == 0 {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        };
        parts.push(body);
    }
    let mut s = parts.join("+").replace("+-", "-");
    if s.is_empty() {
        s = "0".into();
    }
    s
}

impl fmt::Display for VermaCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.chi < 0 { "-" } else { "" };
        write!(f, "{sign}t^({})/({})", self.h_c, render_poly_t(&self.det))
    }
}

pub fn character_verma(ctx: &DunklContext, tau: LowestWeight, g: usize) -> VermaCharacter {
    let group = ctx.group();
    let chi = match tau {
        LowestWeight::Trivial => 1,
        LowestWeight::Sign if group.length(g).is_multiple_of(2) => 1,
        LowestWeight::Sign => -1,
    };
    let h_c = match tau {
        LowestWeight::Trivial => ctx.lowest_weight(),
        LowestWeight::Sign => {
            let half = ParamScalar::scalar(Scalar::from_ratio(ctx.dim() as i64, 2));
            let shift = &ctx.lowest_weight() - &half;
            &half - &shift
        }
    };
    VermaCharacter {
        tau,
        element: g,
        chi,
        h_c,
        det: group.element(g).det_one_minus_t(),
    }
}
