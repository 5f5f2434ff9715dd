//! `≡ₙᴿ` evaluated straight from its recursive definition, quantifying over
//! every pair of factorizations. Exponential; meant for cross-checking
//! the signature engine on short words.

use super::{content, Letter};

pub fn r_equiv(u: &[Letter], v: &[Letter], n: u32) -> bool {
    if content(u) != content(v) {
        return false;
    }
    if n == 0 {
        return true;
    }
    for i in 0..u.len() {
        for j in 0..v.len() {
            let a = u[i];
            if v[j] != a {
                continue;
            }
            let (u1, u2) = (&u[..i], &u[i + 1..]);
            let (v1, v2) = (&v[..j], &v[j + 1..]);
            if !content(u1).contains(a)
                && !content(v1).contains(a)
                && !(r_equiv(u1, v1, n - 1) && r_equiv(u2, v2, n - 1))
            {
                return false;
            }
            if !content(u2).contains(a) && !content(v2).contains(a) && !r_equiv(u1, v1, n - 1) {
                return false;
            }
        }
    }
    true
}

pub fn l_equiv(u: &[Letter], v: &[Letter], n: u32) -> bool {
    let ur: Vec<Letter> = u.iter().rev().copied().collect();
    let vr: Vec<Letter> = v.iter().rev().copied().collect();
    r_equiv(&ur, &vr, n)
}

pub fn equiv(u: &[Letter], v: &[Letter], n: u32) -> bool {
    r_equiv(u, v, n) && l_equiv(u, v, n)
}
