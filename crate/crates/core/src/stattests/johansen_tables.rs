// Generated by `examples/johansen_tables.rs` (40000 replications, T = 1000, seed 20240401).
// Row d - 1 holds quantiles for d common trends; column i is the upper
// quantile with tail probability TAIL_PROBS[i].

pub const MAX_DIM: usize = 10;
pub const TAIL_PROBS: [f64; 18] = [0.999, 0.99, 0.975, 0.95, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05, 0.025, 0.01, 0.005, 0.001];

pub const TRACE_NONE: [[f64; 18]; MAX_DIM] = [
    [0.0000, 0.0003, 0.0017, 0.0063, 0.0244, 0.0957, 0.2159, 0.3803, 0.5953, 0.8881, 1.2774, 1.8851, 2.9614, 4.1443, 5.3492, 6.9649, 8.2286, 11.3652],
    [0.7374, 1.2718, 1.6531, 2.0135, 2.5644, 3.3783, 4.0809, 4.7744, 5.4922, 6.2840, 7.2530, 8.4636, 10.4309, 12.2755, 14.1229, 16.3768, 18.1443, 21.7588],
    [4.7204, 6.2569, 7.1581, 8.0624, 9.2588, 10.8390, 12.1115, 13.2886, 14.4851, 15.7468, 17.2031, 19.0411, 21.8146, 24.4096, 26.7017, 29.4986, 31.4823, 36.0215],
    [12.5820, 15.1052, 16.6438, 18.1460, 19.8945, 22.2784, 24.1377, 25.8137, 27.4846, 29.2310, 31.1619, 33.6149, 37.1994, 40.3208, 43.1712, 46.7492, 48.9489, 53.6459],
    [24.0723, 28.1182, 30.2400, 32.1778, 34.6247, 37.8021, 40.2269, 42.3738, 44.4819, 46.7239, 49.1094, 52.0824, 56.4044, 60.1196, 63.5311, 68.0016, 70.9788, 76.6748],
    [39.1679, 45.0500, 47.8203, 50.4091, 53.4821, 57.4581, 60.4720, 63.1304, 65.6139, 68.2687, 71.1281, 74.6872, 79.7108, 84.2656, 87.9877, 92.6669, 96.2429, 103.2927],
    [58.9805, 65.9935, 69.5509, 72.5236, 76.2829, 81.0551, 84.5683, 87.7195, 90.6161, 93.7333, 97.1634, 101.2586, 107.1932, 112.1075, 116.3827, 121.8459, 125.4693, 133.8384],
    [83.6572, 91.2938, 95.1471, 98.7955, 103.3535, 108.6918, 112.8038, 116.3998, 119.8215, 123.3695, 127.2972, 131.8331, 138.3389, 144.2326, 149.3361, 156.1205, 160.4485, 168.3862],
    [110.5558, 120.2849, 124.9840, 129.1898, 134.1137, 140.4007, 145.0941, 149.2075, 152.9765, 156.9692, 161.4441, 166.5901, 173.8744, 180.3129, 186.0938, 192.5707, 197.2492, 207.5513],
    [144.2484, 153.9006, 159.2052, 163.7928, 169.2598, 176.2347, 181.2980, 185.9767, 190.2687, 194.7098, 199.5306, 205.2816, 213.5169, 220.6089, 226.8572, 234.0496, 238.9549, 250.4291],
];

pub const MAX_NONE: [[f64; 18]; MAX_DIM] = [
    [0.0000, 0.0003, 0.0017, 0.0063, 0.0244, 0.0957, 0.2159, 0.3803, 0.5953, 0.8881, 1.2774, 1.8851, 2.9614, 4.1443, 5.3492, 6.9649, 8.2286, 11.3652],
    [0.6504, 1.1039, 1.4147, 1.7293, 2.2090, 2.9273, 3.5562, 4.1867, 4.8509, 5.5643, 6.4413, 7.6107, 9.4281, 11.1397, 12.8656, 15.0526, 16.6071, 20.1887],
    [2.7836, 3.8695, 4.5288, 5.1603, 5.9938, 7.1521, 8.1069, 8.9884, 9.8839, 10.8782, 12.0060, 13.4923, 15.7529, 17.8945, 19.7990, 22.2133, 24.0258, 27.6755],
    [5.9620, 7.5441, 8.3723, 9.2288, 10.2931, 11.7730, 12.9390, 14.0281, 15.1172, 16.2892, 17.6160, 19.2985, 21.9291, 24.2630, 26.5203, 29.0785, 30.9783, 35.2228],
    [9.7370, 11.5821, 12.6672, 13.6549, 14.8915, 16.6066, 17.9751, 19.2613, 20.4886, 21.7859, 23.2807, 25.1958, 27.9593, 30.4380, 32.7378, 35.6599, 37.8135, 42.1869],
    [13.4297, 15.9057, 17.1291, 18.2577, 19.7829, 21.6943, 23.2094, 24.5826, 25.9337, 27.3574, 28.9797, 31.0054, 34.0457, 36.7364, 39.3308, 42.4506, 44.6055, 50.0139],
    [17.6436, 20.4158, 21.8075, 23.1455, 24.7405, 26.8404, 28.4704, 29.9258, 31.3814, 32.9215, 34.6617, 36.8069, 39.9475, 42.8454, 45.4228, 48.6851, 50.7423, 56.6142],
    [22.3343, 25.0622, 26.6788, 28.1170, 29.8437, 32.0979, 33.8348, 35.4345, 36.9824, 38.5770, 40.3715, 42.6859, 46.0341, 48.9885, 51.7889, 55.0873, 57.7449, 63.2589],
    [26.9518, 29.9151, 31.4811, 33.0615, 34.8998, 37.3287, 39.1872, 40.8790, 42.5376, 44.2598, 46.1391, 48.5626, 52.1029, 55.2755, 58.2051, 61.7477, 64.4468, 70.3068],
    [31.4826, 34.9354, 36.8279, 38.3061, 40.2304, 42.6943, 44.6430, 46.4150, 48.1271, 49.9181, 51.9423, 54.5359, 58.2376, 61.4830, 64.3186, 67.9085, 70.3632, 77.0260],
];

pub const TRACE_CONSTANT: [[f64; 18]; MAX_DIM] = [
    [0.3602, 0.5994, 0.7850, 1.0033, 1.3407, 1.8856, 2.3868, 2.9003, 3.4574, 4.0869, 4.8568, 5.8864, 7.5687, 9.2245, 10.8213, 12.7471, 14.5092, 18.2598],
    [3.2795, 4.5438, 5.3045, 6.0357, 6.9812, 8.3039, 9.3498, 10.3710, 11.3821, 12.4876, 13.7900, 15.4843, 17.9965, 20.2736, 22.2521, 24.9292, 27.0765, 31.4844],
    [10.0566, 12.4776, 13.8016, 15.0889, 16.6899, 18.8410, 20.4636, 21.9761, 23.5271, 25.0974, 26.8588, 29.0731, 32.3282, 35.2353, 37.8690, 41.0244, 43.3609, 48.6552],
    [20.6712, 24.5446, 26.4996, 28.2891, 30.4520, 33.2770, 35.5034, 37.5556, 39.5569, 41.6305, 43.8503, 46.6315, 50.6628, 54.2464, 57.5031, 61.3971, 63.9574, 69.9492],
    [35.9027, 40.3751, 42.9711, 45.2361, 48.0795, 51.8403, 54.6406, 57.1255, 59.5380, 62.0395, 64.8125, 68.1117, 72.8715, 77.1337, 80.9215, 85.8928, 88.7509, 94.9053],
    [54.8084, 60.3386, 63.6264, 66.6221, 70.0932, 74.4952, 77.8917, 80.8308, 83.7540, 86.7112, 89.8968, 93.7376, 99.0745, 104.0460, 108.5148, 113.6929, 117.5432, 125.0209],
    [76.6863, 84.3526, 88.0264, 91.6228, 95.9110, 101.1366, 105.0297, 108.4330, 111.7989, 115.2001, 118.8306, 123.3594, 129.7226, 135.2234, 139.8941, 145.6665, 150.0318, 158.6910],
    [104.7979, 112.6814, 116.9639, 120.9868, 125.7544, 131.7584, 136.2971, 140.2240, 143.9847, 147.7475, 151.8795, 156.8658, 164.1114, 170.0933, 175.8376, 182.5581, 187.1893, 197.0344],
    [134.6509, 144.8611, 149.7000, 154.4376, 159.7891, 166.5323, 171.5304, 175.9163, 180.1636, 184.3788, 189.1395, 194.4998, 202.5787, 209.2247, 215.3520, 222.4623, 227.1027, 238.5655],
    [169.9620, 181.4427, 186.8357, 192.1076, 198.0713, 205.2585, 210.8307, 215.6866, 220.3974, 225.1309, 230.1693, 236.3927, 245.1865, 252.6516, 259.3033, 266.8579, 271.5319, 283.7952],
];

pub const MAX_CONSTANT: [[f64; 18]; MAX_DIM] = [
    [0.3602, 0.5994, 0.7850, 1.0033, 1.3407, 1.8856, 2.3868, 2.9003, 3.4574, 4.0869, 4.8568, 5.8864, 7.5687, 9.2245, 10.8213, 12.7471, 14.5092, 18.2598],
    [2.1333, 3.0241, 3.6202, 4.1634, 4.8640, 5.8670, 6.7261, 7.5336, 8.3668, 9.2674, 10.3493, 11.7292, 13.8800, 15.8932, 17.6779, 20.0490, 21.8856, 25.6840],
    [5.0559, 6.4579, 7.2483, 8.0632, 9.0904, 10.4781, 11.5770, 12.6069, 13.6198, 14.7302, 16.0308, 17.6377, 20.1016, 22.2761, 24.4104, 27.0939, 28.7127, 32.5469],
    [8.4410, 10.4413, 11.4909, 12.4583, 13.6338, 15.2377, 16.5424, 17.7419, 18.9498, 20.1945, 21.6685, 23.4228, 26.1688, 28.5374, 30.8250, 33.8753, 35.8181, 40.0118],
    [12.6229, 14.6237, 15.8438, 16.9628, 18.3602, 20.2442, 21.6804, 23.0275, 24.3549, 25.7300, 27.3101, 29.2556, 32.2083, 34.7866, 37.2455, 40.2827, 42.6434, 47.1267],
    [16.6667, 19.1752, 20.5075, 21.7625, 23.2828, 25.3255, 26.9374, 28.4138, 29.8351, 31.3192, 33.0020, 35.0993, 38.2508, 41.0192, 43.6016, 46.9500, 49.3436, 54.4302],
    [21.0338, 23.7623, 25.2775, 26.6679, 28.3595, 30.5257, 32.2428, 33.8081, 35.3198, 36.8996, 38.6702, 40.8921, 44.2183, 47.2610, 49.9445, 53.0854, 55.5797, 60.8539],
    [25.8894, 28.5859, 30.1624, 31.6866, 33.4680, 35.8906, 37.6501, 39.2707, 40.8868, 42.5277, 44.4272, 46.8083, 50.2469, 53.3034, 56.1199, 59.5621, 62.2664, 67.9354],
    [29.9703, 33.3825, 34.9932, 36.5655, 38.5544, 41.1365, 43.0513, 44.7989, 46.4882, 48.2542, 50.1696, 52.6424, 56.3316, 59.3778, 62.4470, 66.2757, 68.8037, 74.1960],
    [34.7503, 38.4110, 40.2322, 41.8583, 43.8619, 46.5031, 48.5058, 50.2806, 52.0296, 53.8945, 56.0144, 58.5714, 62.3794, 65.7489, 68.6872, 72.5146, 75.2933, 81.6015],
];
