//! Reference implementations kept independent of the library code: a
//! Baillie-PSW test (strong base-2 Fermat plus strong Lucas with Selfridge
//! parameters) and a plain byte sieve.

#![allow(dead_code)]

fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    a * b % n
}

fn pow_mod(mut b: u128, mut e: u128, n: u128) -> u128 {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, n);
        }
        b = mul_mod(b, b, n);
        e >>= 1;
    }
    r
}

fn strong_base_two(n: u128) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mut x = pow_mod(2, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(mut a: u128, mut n: u128) -> i32 {
    a %= n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn is_square(n: u128) -> bool {
    let r = (n as f64).sqrt() as u128;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == n)
}

fn half_mod(x: u128, n: u128) -> u128 {
    if x.is_multiple_of(2) {
        x / 2
    } else {
        (x + n) / 2
    }
}

fn strong_lucas(n: u128) -> bool {
    if is_square(n) {
        return false;
    }
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1
    let mut d: i128 = 5;
    loop {
        let dm = d.rem_euclid(n as i128) as u128;
        match jacobi(dm, n) {
            -1 => break,
            0 if d.unsigned_abs() != n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let dm = d.rem_euclid(n as i128) as u128;
    let q = (1 - d) / 4;
    let qm = q.rem_euclid(n as i128) as u128;

    let mut k = n + 1;
    let mut s = 0;
    while k.is_multiple_of(2) {
        k /= 2;
        s += 1;
    }
    // U_1 = 1, V_1 = P = 1, Q^1
    let (mut u, mut v, mut qk) = (1u128, 1u128, qm);
    let bits = 128 - k.leading_zeros();
    for i in (0..bits - 1).rev() {
        u = mul_mod(u, v, n);
        v = (mul_mod(v, v, n) + 2 * n - 2 * qk % n) % n;
        qk = mul_mod(qk, qk, n);
        if (k >> i) & 1 == 1 {
            let u1 = half_mod((u + v) % n, n);
            let v1 = half_mod((mul_mod(dm, u, n) + v) % n, n);
            u = u1;
            v = v1;
            qk = mul_mod(qk, qm, n);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = (mul_mod(v, v, n) + 2 * n - 2 * qk % n) % n;
        qk = mul_mod(qk, qk, n);
        if v == 0 {
            return true;
        }
    }
    false
}

pub fn bpsw(n: u64) -> bool {
    let n = n as u128;
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    strong_base_two(n) && strong_lucas(n)
}

/// `flags[i]` is true iff `i` is prime, for `i <= bound`.
pub fn byte_sieve(bound: usize) -> Vec<bool> {
    let mut flags = vec![true; bound + 1];
    flags[0] = false;
    if bound >= 1 {
        flags[1] = false;
    }
    let mut i = 2;
    while i * i <= bound {
        if flags[i] {
            let mut j = i * i;
            while j <= bound {
                flags[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    flags
}
