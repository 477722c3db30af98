#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

pub(crate) type Vec3 = [f64; 3];

pub(crate) fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn norm(u: Vec3) -> f64 {
    dot(u, u).sqrt()
}

pub(crate) fn scale(u: Vec3, s: f64) -> Vec3 {
    [u[0] * s, u[1] * s, u[2] * s]
}

pub(crate) fn add(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub(crate) fn sub(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub(crate) fn normalize(u: Vec3) -> Vec3 {
    let n = norm(u);
    if n == 0.0 {
        u
    } else {
        scale(u, 1.0 / n)
    }
}

/// `x mod 2π` in `[0, 2π]`; `f64::rem_euclid` is unavailable without std.
pub(crate) fn rem_tau(x: f64) -> f64 {
    let r = x % core::f64::consts::TAU;
    if r < 0.0 {
        r + core::f64::consts::TAU
    } else {
        r
    }
}
