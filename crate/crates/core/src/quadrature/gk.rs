//! Gauss–Kronrod node/weight tables (QUADPACK values).

#![allow(clippy::excessive_precision)]

/// An embedded Gauss–Kronrod pair. Nodes are stored for the positive half of
/// `[-1, 1]`, centre first; Gauss nodes are the even-indexed Kronrod nodes.
#[derive(Debug, Clone, Copy)]
pub struct GaussKronrod {
    nodes: &'static [f64],
    kronrod: &'static [f64],
    gauss: &'static [f64],
}

const K15_NODES: [f64; 8] = [
    0.0,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.991_455_371_120_812_639_206_854_697_526_329,
];
const K15_WEIGHTS: [f64; 8] = [
    0.209_482_141_084_727_828_012_999_174_891_714,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.022_935_322_010_529_224_963_732_008_058_970,
];
const G7_WEIGHTS: [f64; 4] = [
    0.417_959_183_673_469_387_755_102_040_816_327,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.129_484_966_168_869_693_270_611_432_679_082,
];

const K31_NODES: [f64; 16] = [
    0.0,
    0.101_142_066_918_717_499_027_074_231_447_392,
    0.201_194_093_997_434_522_300_628_303_394_596,
    0.299_180_007_153_168_812_166_780_024_266_389,
    0.394_151_347_077_563_369_897_207_370_981_045,
    0.485_081_863_640_239_680_693_655_740_232_351,
    0.570_972_172_608_538_847_537_226_737_253_911,
    0.650_996_741_297_416_970_533_735_895_313_275,
    0.724_417_731_360_170_047_416_186_054_613_938,
    0.790_418_501_442_465_932_967_649_294_817_947,
    0.848_206_583_410_427_216_200_648_320_774_217,
    0.897_264_532_344_081_900_882_509_656_454_496,
    0.937_273_392_400_705_904_307_758_947_710_209,
    0.967_739_075_679_139_134_257_347_978_784_337,
    0.987_992_518_020_485_428_489_565_718_586_613,
    0.998_002_298_693_397_060_285_172_840_152_271,
];
const K31_WEIGHTS: [f64; 16] = [
    0.101_330_007_014_791_549_017_374_792_767_493,
    0.100_769_845_523_875_595_044_946_662_617_570,
    0.099_173_598_721_791_959_332_393_173_484_603,
    0.096_642_726_983_623_678_505_179_907_627_590,
    0.093_126_598_170_825_321_225_486_872_747_346,
    0.088_564_443_056_211_770_647_275_443_693_774,
    0.083_080_502_823_133_021_038_289_247_286_104,
    0.076_849_680_757_720_378_894_432_777_482_659,
    0.069_854_121_318_728_258_709_520_077_099_147,
    0.062_009_567_800_670_640_285_139_230_960_803,
    0.053_481_524_690_928_087_265_343_147_239_430,
    0.044_589_751_324_764_876_608_227_299_373_280,
    0.035_346_360_791_375_846_222_037_948_478_360,
    0.025_460_847_326_715_320_186_874_001_019_653,
    0.015_007_947_329_316_122_538_374_763_075_807,
    0.005_377_479_872_923_348_987_792_051_430_128,
];
const G15_WEIGHTS: [f64; 8] = [
    0.202_578_241_925_561_272_880_620_199_967_519,
    0.198_431_485_327_111_576_456_118_326_443_839,
    0.186_161_000_015_562_211_026_800_561_866_423,
    0.166_269_205_816_993_933_553_200_860_481_209,
    0.139_570_677_926_154_314_447_804_794_511_028,
    0.107_159_220_467_171_935_011_869_546_685_869,
    0.070_366_047_488_108_124_709_267_416_450_667,
    0.030_753_241_996_117_268_354_628_393_577_204,
];

/// One panel's outcome.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelResult {
    pub value: f64,
    pub error: f64,
    /// Kronrod-weighted integral of the integrand's own error bars.
    pub inner_error: f64,
}

impl GaussKronrod {
    pub fn g7k15() -> Self {
        Self {
            nodes: &K15_NODES,
            kronrod: &K15_WEIGHTS,
            gauss: &G7_WEIGHTS,
        }
    }

    pub fn g15k31() -> Self {
        Self {
            nodes: &K31_NODES,
            kronrod: &K31_WEIGHTS,
            gauss: &G15_WEIGHTS,
        }
    }

    pub fn with_points(points: usize) -> Option<Self> {
        match points {
            15 => Some(Self::g7k15()),
            31 => Some(Self::g15k31()),
            _ => None,
        }
    }

    pub fn points(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    /// Apply the rule on `[a, b]` to `f`, which returns a value and an error
    /// bar for that value (zero for plain integrands).
    pub(crate) fn panel<F>(&self, f: &mut F, a: f64, b: f64, compensated: bool) -> PanelResult
    where
        F: FnMut(f64) -> (f64, f64),
    {
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut kron = super::Accumulator::new(if compensated {
            super::Precision::Compensated
        } else {
            super::Precision::Double
        });
        let mut gauss = 0.0;
        let mut abs_sum = 0.0;
        let mut inner = 0.0;
        let mut fvals = [(0.0, 0.0); 16];

        let (fc, ec) = f(center);
        kron.add(self.kronrod[0] * fc);
        gauss += self.gauss[0] * fc;
        abs_sum += self.kronrod[0] * fc.abs();
        inner += self.kronrod[0] * ec;
        fvals[0] = (fc, fc);

        for (i, &x) in self.nodes.iter().enumerate().skip(1) {
            let (fl, el) = f(center - half * x);
            let (fr, er) = f(center + half * x);
            let w = self.kronrod[i];
            kron.add(w * fl);
            kron.add(w * fr);
            abs_sum += w * (fl.abs() + fr.abs());
            inner += w * (el + er);
            if i % 2 == 0 {
                gauss += self.gauss[i / 2] * (fl + fr);
            }
            fvals[i] = (fl, fr);
        }

        let k = kron.total();
        // residual spread around the mean (QUADPACK "resasc")
        let mean = 0.5 * k;
        let mut asc = self.kronrod[0] * (fvals[0].0 - mean).abs();
        for (i, &(fl, fr)) in fvals.iter().enumerate().take(self.nodes.len()).skip(1) {
            asc += self.kronrod[i] * ((fl - mean).abs() + (fr - mean).abs());
        }
        let value = k * half;
        let res_abs = abs_sum * half.abs();
        let res_asc = asc * half.abs();
        let mut err = ((k - gauss) * half).abs();
        if res_asc != 0.0 && err != 0.0 {
            err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
        }
        if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * res_abs);
        }
        PanelResult {
            value,
            error: err,
            inner_error: inner * half.abs(),
        }
    }
}
