// Generated: Taylor coefficients in z = 2p - 1 of the Riemann-Siegel
// correction functions C0..C4, where p is the fractional part of sqrt(t / 2pi).

pub(crate) const C0: [f64; 47] = [
    0.3826834323650898,
    0.0,
    0.43724046807752043,
    0.0,
    0.1323765754803435,
    0.0,
    -0.013605026047674188,
    0.0,
    -0.013567621970103581,
    7.647424127986299e-65,
    -0.0016237253231444653,
    -1.624718585013498e-65,
    0.0002970535373337969,
    -4.89968280965416e-66,
    7.94330087952147e-05,
    -3.168806755122626e-68,
    4.6556124614504504e-07,
    1.0578889407604632e-67,
    -1.4327251630955106e-06,
    8.180652667362473e-69,
    -1.0354847112312946e-07,
    -1.0326406976333269e-69,
    1.2357927083861738e-08,
    -1.5647942535858228e-70,
    1.7881083857954906e-09,
    3.0812217993457744e-72,
    -3.391414389927036e-11,
    1.5279821680277195e-72,
    -1.6326633902565907e-11,
    3.6229296054989385e-74,
    -3.7851093185412205e-13,
    -9.069483975795265e-75,
    9.327423259201725e-14,
    -5.1250398750238754e-76,
    5.221843015978137e-15,
    3.2987391944282122e-77,
    -3.350673072744264e-16,
    3.3491665579539114e-78,
    -3.4124265228117265e-17,
    -5.592160353096854e-80,
    5.751203341432399e-19,
    -1.425708579333862e-80,
    1.4895301363211506e-19,
    -1.1759720687565188e-82,
    1.2565372717021416e-21,
    4.2894663327186514e-83,
    -4.721295250143426e-22,
];

pub(crate) const C1: [f64; 48] = [
    0.0,
    -0.026825102628375348,
    0.0,
    0.013784773426351853,
    0.0,
    0.03849125048223508,
    -3.2543534707426875e-64,
    0.009871066299062077,
    1.3581018834839924e-64,
    -0.0033107597608584044,
    7.099115762970297e-65,
    -0.0014647808577954152,
    7.304279963955066e-67,
    -1.3207940624876963e-05,
    -3.644343027759628e-66,
    5.9227487018471416e-05,
    -4.015891677380345e-67,
    5.980242585373449e-06,
    6.957787121136964e-68,
    -9.641322456169826e-07,
    1.4039319665105397e-68,
    -1.8334733722714413e-07,
    -3.590219957404308e-70,
    4.4670875627178334e-09,
    -2.264198067040952e-70,
    2.7096350821772744e-09,
    -6.70654275516451e-72,
    7.785288654315851e-11,
    2.0652970886401495e-72,
    -2.343762601089369e-11,
    1.4165824901271592e-73,
    -1.5830172789987521e-12,
    -1.0937747426406281e-74,
    1.211994157372379e-13,
    -1.3183418046841673e-75,
    1.4583781161108306e-14,
    2.589098376694371e-77,
    -2.878630525813192e-16,
    7.699423825954707e-78,
    -8.662862902123724e-17,
    7.352205169906485e-80,
    -8.430722727137041e-19,
    -3.0835849537474573e-80,
    3.6308072230973464e-19,
    -9.538741486613701e-82,
    1.1626698212838296e-20,
    8.620952468064318e-83,
    -1.0975486711527531e-21,
];

pub(crate) const C2: [f64; 51] = [
    0.005188542830293168,
    0.0,
    0.00030946583880634744,
    1.6486747282309957e-64,
    -0.011335941078229373,
    -1.9264628647808096e-64,
    0.0022330457419581446,
    -1.80919170674624e-64,
    0.00519663740886233,
    -1.5387946299516103e-65,
    0.0003439914407620834,
    2.876136637256369e-65,
    -0.0005910648427470583,
    5.654388497127132e-66,
    -0.00010229972547935857,
    -1.255924150967841e-66,
    2.0888392216992754e-05,
    -3.876897693455507e-67,
    5.927665493096536e-06,
    1.1258470505152821e-68,
    -1.6423838362436276e-07,
    1.110680387080233e-68,
    -1.5161199700940684e-07,
    4.533918915573244e-70,
    -5.907803698206668e-09,
    -1.6458999084044024e-70,
    2.0911514859478188e-09,
    -1.4381983330299317e-71,
    1.781564958329235e-10,
    1.320786783633585e-72,
    -1.6164072455353832e-11,
    1.9640240863335962e-73,
    -2.3806962496667617e-12,
    -4.434014472080391e-75,
    5.398265295542595e-14,
    -1.6170117954502116e-75,
    1.9750142196969516e-14,
    -1.892469025436626e-77,
    2.3332868732882633e-16,
    8.818746257867036e-78,
    -1.118751761004808e-16,
    3.1865547935686026e-79,
    -4.164009488883767e-18,
    -3.2610925270801793e-80,
    4.446081109291883e-19,
    -1.992363481281139e-81,
    2.8546114783637145e-20,
    7.794042144830841e-83,
    -1.1913231430037894e-21,
    7.875118945586856e-84,
    -1.29816343607365e-22,
];

pub(crate) const C3: [f64; 52] = [
    -2.784094581759567e-66,
    -0.0013397160907194568,
    3.2531916283766754e-65,
    0.003744215136379394,
    2.8618460087695366e-65,
    -0.0013303178919321468,
    8.283240644520948e-65,
    -0.0022654660765471786,
    -3.1068515518209075e-65,
    0.0009548499998506731,
    -2.5969420716577693e-65,
    0.0006010038458963604,
    4.531336817638174e-66,
    -0.00010128858286776622,
    3.6802724787829646e-66,
    -6.865733449299826e-05,
    -1.914153787600633e-68,
    5.985366791538599e-07,
    -2.0715277305321163e-67,
    3.331659851239947e-06,
    -1.4821235625706436e-68,
    2.1919289102435082e-07,
    5.401508681573104e-69,
    -7.890884245681494e-08,
    6.751741899244882e-70,
    -9.414685081295262e-09,
    -6.91051361042124e-71,
    9.57011621088348e-10,
    -1.3922975340814115e-71,
    1.8763137453470662e-10,
    3.223842951234893e-73,
    -4.4378376793233995e-12,
    1.6690812608704867e-73,
    -2.242673850561735e-12,
    2.741145283111023e-75,
    -3.6276868657352434e-14,
    -1.2745478208351181e-75,
    1.7639809550821582e-14,
    -5.6435538634497374e-77,
    7.960765246786778e-16,
    6.372069768456222e-78,
    -9.419651490589691e-17,
    4.6295910344748044e-79,
    -7.133103854569658e-18,
    -1.9916373112748154e-80,
    3.2899105845546245e-19,
    -2.3673580855914737e-81,
    4.1807303748984594e-20,
    2.8048725753339017e-83,
    -5.550542071646334e-22,
    8.212959276797041e-84,
    -1.7870441906260124e-22,
];

pub(crate) const C4: [f64; 53] = [
    0.00046483389361763383,
    7.320069807489489e-66,
    -0.001005660736534047,
    -5.514020576038467e-65,
    0.00024044856573725794,
    -3.049285717927469e-65,
    0.0010283086149702322,
    2.1390030184935576e-65,
    -0.0007657861071755644,
    1.0088598447533252e-65,
    -0.00020365286803084818,
    -9.225730579940929e-66,
    0.0002321229049106873,
    -1.8186561979662812e-66,
    3.2602144243865195e-05,
    1.2547844144487155e-66,
    -2.5579062517949524e-05,
    2.3869570252172015e-67,
    -4.107464438915745e-06,
    -6.612326295747974e-68,
    1.1781113640371294e-06,
    -1.521447255252698e-68,
    2.445656142248458e-07,
    1.44124600067381e-69,
    -2.3915824767344323e-08,
    4.89497522908252e-70,
    -7.505214207035756e-09,
    -7.50722240855805e-72,
    1.3312279416258429e-10,
    -8.897949362655372e-72,
    1.344062675422562e-10,
    -2.4660561574674837e-73,
    3.513770042430486e-12,
    9.853691242693475e-74,
    -1.519154453370392e-12,
    5.799214697241815e-75,
    -8.915417681447087e-14,
    -6.837003958182932e-76,
    1.1195891165228536e-14,
    -6.270162714259806e-77,
    1.0516013329914816e-15,
    2.8284047293440916e-78,
    -5.1786552736466835e-17,
    4.204861402329568e-79,
    -8.065874861916566e-18,
    -4.68043618766802e-81,
    1.0608204530563966e-19,
    -1.8762194443667167e-81,
    4.433680674299409e-20,
    -1.7278801686464204e-83,
    4.320051147035015e-22,
    5.488549483814988e-84,
    -1.8230389229596892e-22,
];

/// B_{2k} / (2k)! for k = 1, 2, ...
pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
];
