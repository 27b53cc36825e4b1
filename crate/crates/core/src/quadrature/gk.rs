use num_complex::Complex;

use crate::scalar::{lit, Real};

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_600_525_479,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Result of one Gauss–Kronrod panel.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Panel<T> {
    pub a: T,
    pub b: T,
    pub value: Complex<T>,
    pub error: T,
    pub abs_value: T,
}

pub(crate) struct Rule<T> {
    xgk: [T; 11],
    wgk: [T; 11],
    wg: [T; 5],
}

impl<T: Real> Rule<T> {
    pub fn new() -> Self {
        Rule {
            xgk: XGK.map(lit),
            wgk: WGK.map(lit),
            wg: WG.map(lit),
        }
    }

    pub fn apply<F>(&self, f: &F, a: T, b: T) -> Panel<T>
    where
        F: Fn(T) -> Complex<T> + ?Sized,
    {
        let half = (b - a) * lit(0.5);
        let center = a + half;
        let fc = f(center);
        let mut kronrod = fc * self.wgk[10];
        let mut gauss = Complex::new(T::zero(), T::zero());
        let mut abs_sum = fc.norm() * self.wgk[10];
        let mut samples = [Complex::new(T::zero(), T::zero()); 21];
        samples[20] = fc;
        for j in 0..10 {
            let dx = half * self.xgk[j];
            let f1 = f(center - dx);
            let f2 = f(center + dx);
            samples[2 * j] = f1;
            samples[2 * j + 1] = f2;
            let sum = f1 + f2;
            kronrod = kronrod + sum * self.wgk[j];
            abs_sum = abs_sum + (f1.norm() + f2.norm()) * self.wgk[j];
            if j % 2 == 1 {
                gauss = gauss + sum * self.wg[j / 2];
            }
        }
        let mean: Complex<T> = kronrod * lit::<T>(0.5);
        let mut asc: T = (fc - mean).norm() * self.wgk[10];
        for j in 0..10 {
            asc = asc + ((samples[2 * j] - mean).norm() + (samples[2 * j + 1] - mean).norm()) * self.wgk[j];
        }
        let abs_half = half.abs();
        let value = kronrod * half;
        let raw = ((kronrod - gauss) * half).norm();
        let res_abs = abs_sum * abs_half;
        let res_asc = asc * abs_half;
        Panel {
            a,
            b,
            value,
            error: rescale_error(raw, res_abs, res_asc),
            abs_value: res_abs,
        }
    }
}

fn rescale_error<T: Real>(raw: T, res_abs: T, res_asc: T) -> T {
    let mut err = raw;
    if res_asc != T::zero() && err != T::zero() {
        let scale = (lit::<T>(200.0) * err / res_asc).powf(lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let eps = T::epsilon();
    if res_abs > T::min_positive_value() / (lit::<T>(50.0) * eps) {
        let floor = lit::<T>(50.0) * eps * res_abs;
        if floor > err {
            err = floor;
        }
    }
    err
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_panel_integrates_polynomials_exactly() {
        let rule = Rule::<f64>::new();
        // Kronrod-21 is exact for degree 31.
        let p = rule.apply(&|x: f64| Complex::new(x.powi(30), 0.0), -1.0, 1.0);
        assert!((p.value.re - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_weights_sum_to_two() {
        let s: f64 = WG.iter().sum::<f64>() * 2.0;
        assert!((s - 2.0).abs() < 1e-14);
        let k: f64 = WGK[..10].iter().sum::<f64>() * 2.0 + WGK[10];
        assert!((k - 2.0).abs() < 1e-14);
    }
}
