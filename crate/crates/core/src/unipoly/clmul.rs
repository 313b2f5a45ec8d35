//! Carryless multiplication kernels.

/// Carryless product of two 64-bit words, returned as `(low, high)`.
#[inline]
pub fn clmul64(a: u64, b: u64) -> (u64, u64) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul64_pclmul(a, b) };
        }
    }
    clmul64_soft(a, b)
}

/// Portable 4-bit windowed carryless product.
#[inline]
pub fn clmul64_soft(a: u64, b: u64) -> (u64, u64) {
    let mut table = [0u128; 16];
    let a = a as u128;
    for i in 1..16usize {
        table[i] = if i & 1 == 1 {
            table[i ^ 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc: u128 = 0;
    for k in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * k)) & 0xf) as usize];
    }
    (acc as u64, (acc >> 64) as u64)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul64_pclmul(a: u64, b: u64) -> (u64, u64) {
    use std::arch::x86_64::*;
    let va = _mm_set_epi64x(0, a as i64);
    let vb = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(va, vb, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    (lo, hi)
}

/// Spreads the 32 low bits of `x` into the even bit positions of a `u64`.
#[inline]
pub fn spread32(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread32`]: gathers the even bits of `x`.
#[inline]
pub fn gather_even(x: u64) -> u32 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

/// Schoolbook word-slice product, `out` must be zeroed with `a.len() + b.len()` words.
pub fn mul_schoolbook(out: &mut [u64], a: &[u64], b: &[u64]) {
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let (lo, hi) = clmul64(ai, bj);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

const KARATSUBA_WORDS: usize = 64;

/// Product of word slices, switching to Karatsuba for long balanced operands.
pub fn mul_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    if a.is_empty() || b.is_empty() {
        return out;
    }
    mul_into(&mut out, a, b);
    out
}

fn mul_into(out: &mut [u64], a: &[u64], b: &[u64]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_WORDS {
        mul_schoolbook(out, a, b);
        return;
    }
    if a.len() > b.len() {
        // Unbalanced: slice the longer operand into chunks of b's length.
        for (k, chunk) in a.chunks(b.len()).enumerate() {
            let mut part = vec![0u64; chunk.len() + b.len()];
            mul_into(&mut part, chunk, b);
            let off = k * b.len();
            for (o, p) in out[off..off + part.len()].iter_mut().zip(part) {
                *o ^= p;
            }
        }
        return;
    }
    let n = a.len();
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let mut z0 = vec![0u64; 2 * h];
    mul_into(&mut z0, a0, b0);
    let mut z2 = vec![0u64; a1.len() + b1.len()];
    mul_into(&mut z2, a1, b1);
    let m = a1.len();
    let mut sa = a1.to_vec();
    let mut sb = b1.to_vec();
    for i in 0..h {
        sa[i] ^= a0[i];
        sb[i] ^= b0[i];
    }
    let mut z1 = vec![0u64; 2 * m];
    mul_into(&mut z1, &sa, &sb);
    for (i, v) in z0.iter().enumerate() {
        z1[i] ^= v;
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] ^= v;
    }
    for (i, v) in z0.iter().enumerate() {
        out[i] ^= v;
    }
    for (i, v) in z2.iter().enumerate() {
        out[2 * h + i] ^= v;
    }
    for (i, v) in z1.iter().enumerate() {
        if h + i < out.len() {
            out[h + i] ^= v;
        }
    }
}
