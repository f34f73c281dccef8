"""
Published Monte Carlo reference values for the two drift estimators.

Each entry is keyed by (a, b, sigma) and holds, per (estimator, parameter),
the replication means and standard deviations at T = 10, 50, 100, 150, 200
(100 Euler paths from r0 = 1). Parameter sets with 2a > sigma^2 carry both
estimators; the others carry only the alternative estimator.
"""

from drift.estimators import ALTERNATIVE, MLE

BENCHMARK_CHECKPOINTS = (10.0, 50.0, 100.0, 150.0, 200.0)
BENCHMARK_R0 = 1.0
BENCHMARK_REPLICATIONS = 100

BENCHMARKS = {
    (1.0, 1.0, 1.0): {
        (MLE, "a"): ((1.3520, 1.0507, 1.0187, 1.0105, 1.0073), (0.5357, 0.1628, 0.0983, 0.0818, 0.0723)),
        (ALTERNATIVE, "a"): ((1.5328, 1.1152, 1.0535, 1.0300, 1.0226), (0.5804, 0.2435, 0.1701, 0.1306, 0.1203)),
        (MLE, "b"): ((1.4514, 1.0772, 1.0244, 1.0176, 1.0132), (0.5969, 0.2184, 0.1398, 0.1086, 0.0986)),
        (ALTERNATIVE, "b"): ((1.6350, 1.1459, 1.0554, 1.0363, 1.0271), (0.6687, 0.2983, 0.1829, 0.1437, 0.1293)),
    },
    (1.0, 2.0, 1.0): {
        (MLE, "a"): ((1.2013, 1.0401, 1.0144, 1.0082, 1.0046), (0.3201, 0.1077, 0.0700, 0.0557, 0.0495)),
        (ALTERNATIVE, "a"): ((1.3028, 1.0766, 1.0270, 1.0206, 1.0140), (0.4304, 0.1618, 0.1051, 0.0974, 0.0872)),
        (MLE, "b"): ((2.4399, 2.1229, 2.0677, 2.0335, 2.0159), (0.6993, 0.2658, 0.1941, 0.1693, 0.1587)),
        (ALTERNATIVE, "b"): ((2.5135, 2.1743, 2.0851, 2.0526, 2.0303), (0.7686, 0.3495, 0.2628, 0.2393, 0.2178)),
    },
    (1.0, 3.0, 1.0): {
        (MLE, "a"): ((1.0915, 1.0201, 1.0192, 1.0129, 1.0141), (0.2029, 0.0821, 0.0559, 0.0470, 0.0459)),
        (ALTERNATIVE, "a"): ((1.1142, 1.0411, 1.0241, 1.0252, 1.0239), (0.2961, 0.1282, 0.0944, 0.0810, 0.0778)),
        (MLE, "b"): ((3.3578, 3.0316, 3.0287, 3.0094, 3.0162), (0.8546, 0.3701, 0.2479, 0.2071, 0.1949)),
        (ALTERNATIVE, "b"): ((3.1754, 3.0495, 3.0243, 3.0313, 3.0339), (0.8816, 0.4501, 0.3351, 0.2731, 0.2578)),
    },
    (2.0, 1.0, 1.0): {
        (MLE, "a"): ((2.8227, 2.0724, 1.9885, 1.9909, 1.9963), (1.1649, 0.3163, 0.2316, 0.2087, 0.1908)),
        (ALTERNATIVE, "a"): ((2.8584, 2.1097, 2.0035, 2.0030, 2.0157), (1.1089, 0.4139, 0.3142, 0.2724, 0.2446)),
        (MLE, "b"): ((1.4767, 1.0521, 0.9980, 0.9967, 0.9998), (0.6254, 0.1944, 0.1323, 0.1214, 0.1101)),
        (ALTERNATIVE, "b"): ((1.5466, 1.0813, 1.0102, 1.0056, 1.0120), (0.5977, 0.2338, 0.1702, 0.1475, 0.1333)),
    },
    (2.0, 2.0, 1.0): {
        (MLE, "a"): ((2.2837, 2.0511, 2.0353, 2.0170, 2.0216), (0.6633, 0.2375, 0.1662, 0.1365, 0.1173)),
        (ALTERNATIVE, "a"): ((2.4734, 2.1057, 2.0447, 2.0057, 2.0065), (0.7880, 0.2990, 0.2134, 0.1784, 0.1560)),
        (MLE, "b"): ((2.3087, 2.0703, 2.0437, 2.0210, 2.0216), (0.6851, 0.2865, 0.1996, 0.1600, 0.1324)),
        (ALTERNATIVE, "b"): ((2.4894, 2.1255, 2.0536, 2.0104, 2.0074), (0.7913, 0.3422, 0.2441, 0.2007, 0.1755)),
    },
    (2.0, 3.0, 1.0): {
        (MLE, "a"): ((2.2114, 2.0113, 2.0120, 2.0098, 2.0091), (0.5337, 0.1986, 0.1509, 0.1057, 0.0915)),
        (ALTERNATIVE, "a"): ((2.2874, 2.0208, 2.0224, 2.0195, 2.0103), (0.5829, 0.2602, 0.1825, 0.1379, 0.1217)),
        (MLE, "b"): ((3.3561, 3.0417, 3.0420, 3.0354, 3.0311), (0.8854, 0.3546, 0.2705, 0.1811, 0.1619)),
        (ALTERNATIVE, "b"): ((3.4176, 3.0446, 3.0535, 3.0465, 3.0305), (0.9314, 0.4384, 0.3185, 0.2254, 0.1988)),
    },
    (3.0, 1.0, 1.0): {
        (MLE, "a"): ((3.9869, 3.1923, 3.0761, 3.0475, 3.0538), (1.2874, 0.5061, 0.4039, 0.3421, 0.2991)),
        (ALTERNATIVE, "a"): ((3.7772, 3.1524, 3.0538, 3.0347, 3.0475), (1.3190, 0.5808, 0.4591, 0.4042, 0.3519)),
        (MLE, "b"): ((1.3899, 1.0798, 1.0337, 1.0264, 1.0262), (0.5563, 0.1882, 0.1525, 0.1283, 0.1109)),
        (ALTERNATIVE, "b"): ((1.3878, 1.0797, 1.0326, 1.0264, 1.0268), (0.5825, 0.2175, 0.1688, 0.1451, 0.1250)),
    },
    (3.0, 1.0, 2.0): {
        (MLE, "a"): ((3.7755, 3.1447, 3.0612, 3.0358, 3.0359), (1.2919, 0.3776, 0.2618, 0.2124, 0.1919)),
        (ALTERNATIVE, "a"): ((4.1227, 3.3441, 3.1022, 3.0743, 3.0872), (1.5027, 0.6588, 0.5050, 0.4323, 0.4014)),
        (MLE, "b"): ((1.3616, 1.0617, 1.0209, 1.0038, 0.9989), (0.4884, 0.2102, 0.1361, 0.1011, 0.0977)),
        (ALTERNATIVE, "b"): ((1.6055, 1.1483, 1.0447, 1.0220, 1.0185), (0.6558, 0.3057, 0.2179, 0.1673, 0.1519)),
    },
    # 2a < sigma^2 from here on
    (1.0, 1.0, 2.0): {
        (ALTERNATIVE, "a"): ((1.6220, 1.1125, 1.0583, 1.0384, 1.0348), (0.6134, 0.2720, 0.2164, 0.1826, 0.1589)),
        (ALTERNATIVE, "b"): ((2.0929, 1.2595, 1.1232, 1.0907, 1.0621), (1.2187, 0.4458, 0.3275, 0.2782, 0.2326)),
    },
    (1.0, 1.0, 3.0): {
        (ALTERNATIVE, "a"): ((1.3276, 1.1253, 1.1256, 1.1407, 1.1091), (2.5786, 1.0947, 0.6717, 0.5451, 0.4372)),
        (ALTERNATIVE, "b"): ((1.4055, 1.0156, 1.1587, 1.2190, 1.1632), (2.6746, 1.9533, 0.9132, 0.7432, 0.6196)),
    },
    (1.0, 2.0, 2.0): {
        (ALTERNATIVE, "a"): ((1.3309, 1.0907, 1.0570, 1.0357, 1.0212), (0.3762, 0.2141, 0.1442, 0.1317, 0.1144)),
        (ALTERNATIVE, "b"): ((2.9370, 2.2790, 2.1923, 2.1499, 2.1059), (1.2131, 0.5691, 0.3801, 0.3290, 0.2883)),
    },
    (1.0, 2.0, 3.0): {
        (ALTERNATIVE, "a"): ((1.2227, 1.1028, 1.1034, 1.0695, 1.0367), (2.8947, 0.6768, 0.4528, 0.3581, 0.2840)),
        (ALTERNATIVE, "b"): ((1.7045, 2.2836, 2.3097, 2.2555, 2.1756), (9.6195, 2.1124, 1.1064, 0.8718, 0.6762)),
    },
    (1.0, 3.0, 2.0): {
        (ALTERNATIVE, "a"): ((1.3113, 1.1099, 1.0618, 1.0432, 1.0330), (0.3936, 0.1917, 0.1263, 0.1137, 0.1020)),
        (ALTERNATIVE, "b"): ((3.9779, 3.3292, 3.2273, 3.1416, 3.1023), (1.5206, 0.7385, 0.5665, 0.5010, 0.4566)),
    },
    (1.0, 3.0, 3.0): {
        (ALTERNATIVE, "a"): ((1.3829, 1.2046, 1.0947, 1.0544, 1.0404), (2.2021, 0.8893, 0.3813, 0.2773, 0.2507)),
        (ALTERNATIVE, "b"): ((3.8650, 3.8265, 3.4710, 3.2583, 3.1462), (13.9606, 4.6146, 1.5811, 0.9728, 0.8789)),
    },
    (2.0, 1.0, 3.0): {
        (ALTERNATIVE, "a"): ((3.3746, 2.3050, 2.1699, 2.1496, 2.1363), (1.5845, 0.5720, 0.4390, 0.3586, 0.3095)),
        (ALTERNATIVE, "b"): ((2.2511, 1.2859, 1.1613, 1.1223, 1.1047), (1.6015, 0.4753, 0.3403, 0.2929, 0.2429)),
    },
    (2.0, 2.0, 3.0): {
        (ALTERNATIVE, "a"): ((2.7734, 2.2172, 2.1665, 2.1346, 2.1137), (0.9826, 0.4067, 0.3020, 0.2526, 0.2273)),
        (ALTERNATIVE, "b"): ((3.2242, 2.2986, 2.2252, 2.1454, 2.1101), (1.5489, 0.5355, 0.3979, 0.3355, 0.2954)),
    },
    (2.0, 3.0, 3.0): {
        (ALTERNATIVE, "a"): ((2.5827, 2.1628, 2.1024, 2.0647, 2.0350), (0.7142, 0.3657, 0.2816, 0.2316, 0.1994)),
        (ALTERNATIVE, "b"): ((4.1619, 3.3906, 3.2490, 3.1841, 3.1132), (1.7422, 0.7886, 0.5821, 0.4935, 0.4223)),
    },
    (3.0, 1.0, 3.0): {
        (ALTERNATIVE, "a"): ((4.5037, 3.4455, 3.2534, 3.1348, 3.0772), (1.6354, 0.7223, 0.5435, 0.5096, 0.4290)),
        (ALTERNATIVE, "b"): ((2.0684, 1.3138, 1.1622, 1.1039, 1.0754), (0.9192, 0.3868, 0.2481, 0.2418, 0.2081)),
    },
}


def benchmark_rows(a, b, sigma):
    """Reference values for one parameter set, or None when none were published."""
    return BENCHMARKS.get((float(a), float(b), float(sigma)))


def benchmark_value(a, b, sigma, estimator, param, checkpoint):
    """(mean, std) at one checkpoint, or None."""
    rows = benchmark_rows(a, b, sigma)
    if rows is None or (estimator, param) not in rows:
        return None
    try:
        k = BENCHMARK_CHECKPOINTS.index(float(checkpoint))
    except ValueError:
        return None
    means, stds = rows[(estimator, param)]
    return means[k], stds[k]
