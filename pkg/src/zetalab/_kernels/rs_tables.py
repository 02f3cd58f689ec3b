"""Chebyshev tables (on [0,1]) for the Riemann-Siegel remainder terms.

Generated by tools/gen_rs_tables.py; do not edit by hand.
"""

REMAINDER_CHEB = [
    [
        0.6426672862397684,
        -1.1122510444621194e-15,
        0.2719729999978536,
        -1.1677562661460579e-15,
        0.010738605819339612,
        -9.138428763432912e-16,
        -0.0013743815296347428,
        -1.285513200547341e-15,
        -0.00012468221880413303,
        -1.0598124096115484e-15,
        -5.764599715684978e-07,
        -8.24298540808982e-16,
        2.7280674204334925e-07,
        -8.488312354759158e-16,
        8.077951954477856e-09,
        -1.1837025176795657e-15,
        -2.0884729091426888e-10,
        -1.256073966947021e-15,
        -1.3116689782934405e-11,
    ],
    [
        1.1237409473636032e-15,
        0.010697913921002705,
        4.759342765385193e-16,
        0.01717065124337662,
        1.1205308289122099e-15,
        0.002793211149787845,
        -3.778034978707834e-16,
        -3.63756537187681e-05,
        -1.895610651045656e-15,
        -2.7108955233425934e-05,
        7.848545676648022e-16,
        -1.048374986682944e-06,
        -7.114481453410858e-17,
        5.886467296751063e-08,
        -1.4535621590158393e-16,
        4.322965043753318e-09,
        1.9086436450874653e-15,
        -1.1369096838503008e-11,
        9.294824691934623e-16,
        -6.699663945802663e-12,
        -4.88200623871987e-16,
        -1.0308024981678999e-13,
    ],
    [
        0.003146115853838907,
        1.8177784985605872e-14,
        -0.0023087838845909565,
        1.4959736299063322e-13,
        5.7698207524813166e-05,
        7.124975409385478e-14,
        0.00035238862029613247,
        -6.571028601268684e-14,
        2.524666771938111e-05,
        3.1181238916883106e-13,
        -3.4428212895073756e-06,
        5.7427204981750755e-15,
        -3.535074422890915e-07,
        -1.7231833732258182e-13,
        3.7308397975696555e-09,
        2.9778263940917206e-13,
        1.277434575607077e-09,
        -7.251665215401522e-14,
        2.173367897698063e-11,
        -3.904846010734638e-14,
        -1.8597636536875e-12,
        2.993505469247372e-13,
        -1.7082410455568878e-13,
        1.3343305796710618e-13,
        -7.909988577088068e-14,
        5.974104057836455e-14,
        -1.3642861498294507e-15,
        -1.5408327162440467e-13,
        -1.8521364161557254e-13,
        2.447567052645917e-14,
        -1.5526855535092013e-13,
        -2.2581149472047751e-13,
        -2.555285610879011e-13,
        -2.985188885755282e-13,
        -3.7718680725859364e-13,
        4.8969673492331575e-14,
        -2.2109638747016366e-13,
        -5.310477417544956e-14,
        -3.4900322596953037e-13,
        1.7778475834707077e-13,
        -1.5111321519470183e-13,
        1.418865645613067e-13,
        9.543563216456103e-14,
        2.240595698340292e-13,
        1.985677647973381e-13,
        1.8694994308062506e-13,
        2.503128527032081e-13,
        1.521251313512099e-14,
        3.447332721304151e-13,
        -4.7980986731086437e-14,
        5.394292027242789e-13,
        -9.492105889392172e-14,
        4.980893074788283e-13,
        -1.3290250011259817e-13,
        4.874431002594737e-13,
        -4.64382443937227e-14,
        4.6643951038505e-13,
        -9.761283215158041e-14,
        3.51448905633811e-13,
        -1.4947307398669996e-13,
        -2.1354583736904808e-13,
        4.2929072415630335e-14,
        1.6948992845532938e-13,
    ],
    [
        1.102803217123084e-11,
        7.123256232952154e-05,
        4.351631253409647e-12,
        0.00023234304354742942,
        9.82474116980628e-12,
        -0.00012929912467385916,
        -4.705023594074479e-12,
        1.8074500966020173e-05,
        -1.9285235917869184e-11,
        6.52616222567946e-06,
        5.735549924536095e-12,
        -1.1696418116856646e-07,
        -1.1291835318831763e-12,
        -7.348239024376664e-08,
        3.365061563091877e-14,
        -1.7965179667771306e-09,
        1.926527402598012e-11,
        2.613016804505276e-10,
        1.1276041931860367e-11,
        1.5346332843569196e-11,
        -3.1024473273006337e-12,
        -2.1436550085968915e-11,
        7.620440530701313e-12,
        -9.3625781609024e-12,
        5.999487433274047e-12,
        -3.760160708929459e-12,
        2.4101687804121084e-13,
        1.088998840022332e-11,
        1.3381469029628953e-11,
        -2.213117562592419e-12,
        1.0974487750011797e-11,
        1.6029058254339434e-11,
        1.8049520518395928e-11,
        2.1184982371558873e-11,
        2.6295524278663377e-11,
        -4.1922380573116425e-12,
        1.498325814848339e-11,
        3.6065256453242343e-12,
        2.4108978753272134e-11,
        -1.2930464987017493e-11,
        1.0276327839359429e-11,
        -1.0544985481675189e-11,
        -7.348205603441103e-12,
        -1.6742091583100513e-11,
        -1.5058235257417e-11,
        -1.3989188724762424e-11,
        -1.8295047916227095e-11,
        -1.7492404580255945e-12,
        -2.5061632817358082e-11,
        2.4636662645723653e-12,
        -3.9726244709476364e-11,
        5.719886917816292e-12,
        -3.6451965721766703e-11,
        8.220269436127644e-12,
        -3.5437217021290846e-11,
        2.3287360845385813e-12,
        -3.4387732459270005e-11,
        5.549134818156925e-12,
        -2.585936107946177e-11,
        9.727367823711774e-12,
        1.5120572329057998e-11,
        -3.5781009009384368e-12,
        -1.2439724146359006e-11,
        1.862461072579433e-12,
    ],
    [
        0.00016765697550627802,
        -6.240826542331575e-11,
        -0.0002272878715435032,
        3.437587119368254e-10,
        6.47734752263278e-05,
        1.4066293254743242e-10,
        -8.491985478079558e-06,
        -1.835475835274799e-10,
        -2.6153064548043417e-06,
        9.845568224997316e-10,
        8.334769441294604e-07,
        2.5221405010047877e-11,
        6.330429137119761e-08,
        -5.201367137463764e-10,
        -1.0089205283745601e-08,
        8.982911214252141e-10,
        -1.6090006741538163e-09,
        -2.6441760307910535e-10,
        -4.890281806541189e-10,
        -2.1384970177846215e-10,
        9.766561049717054e-11,
        8.70767901198071e-10,
        -3.247265732821936e-10,
        3.8270117952392133e-10,
        -2.6502668490000207e-10,
        1.3708217645635952e-10,
        -1.8710165211447502e-11,
        -4.4894613515818794e-10,
        -5.654017353379322e-10,
        1.1150622955364637e-10,
        -4.523376200565708e-10,
        -6.643777958297971e-10,
        -7.439472698884121e-10,
        -8.773650763524094e-10,
        -1.0680322953505824e-09,
        2.046980875661021e-10,
        -5.903822625204858e-10,
        -1.423852645915322e-10,
        -9.711679597238109e-10,
        5.476945828601945e-10,
        -4.0742764492740964e-10,
        4.5583324329821485e-10,
        3.277493894135971e-10,
        7.280309985188514e-10,
        6.638832652903497e-10,
        6.098717021968463e-10,
        7.77896013282725e-10,
        1.0132168425691799e-10,
        1.0621279893485908e-09,
        -6.263672138378756e-11,
        1.7027120238516798e-09,
        -1.9313876465876468e-10,
        1.5526640101671014e-09,
        -2.8877211611924784e-10,
        1.50110538921389e-09,
        -5.637186103237308e-11,
        1.4743323841789513e-09,
        -1.7157522845303579e-10,
        1.1079828107386413e-09,
        -3.657647390544215e-10,
        -6.262070165156283e-10,
        1.7038989144696988e-10,
        5.322914855429844e-10,
        -6.423286412148471e-11,
    ],
]
