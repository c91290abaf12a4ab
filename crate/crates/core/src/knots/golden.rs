//! Reference polynomials for the Kinoshita-Terasaka / Conway pair, in the expression grammar.

use crate::laurent::{parse_poly, LaurentPoly};

/// `[2,1]`-colored HOMFLY-PT polynomial of the Kinoshita-Terasaka knot.
pub const KINOSHITA_TERASAKA: &str = "\
    (- a^3*q^-10*(q^20-2*q^19+5*q^18-9*q^17+15*q^16-20*q^15+27*q^14-32*q^13+38*q^12-40*q^11+42*q^10-40*q^9+38*q^8-32*q^7+27*q^6-20*q^5+15*q^4-9*q^3+5*q^2-2*q+1) \
    + a^2*q^-13*(q^26+2*q^24+q^23-4*q^22+19*q^21-32*q^20+67*q^19-95*q^18+142*q^17-172*q^16+218*q^15-228*q^14+246*q^13-228*q^12+218*q^11-172*q^10+142*q^9-95*q^8+67*q^7-32*q^6+19*q^5-4*q^4+q^3+2*q^2+1) \
    + a*q^-15*(-2*q^30+2*q^29-9*q^28+12*q^27-27*q^26+30*q^25-58*q^24+51*q^23-89*q^22+85*q^21-133*q^20+102*q^19-163*q^18+137*q^17-186*q^16+130*q^15-186*q^14+137*q^13-163*q^12+102*q^11-133*q^10+85*q^9-89*q^8+51*q^7-58*q^6+30*q^5-27*q^4+12*q^3-9*q^2+2*q-2) \
    + q^-18*(q^35+4*q^33-3*q^32+15*q^31-16*q^30+57*q^29-61*q^28+131*q^27-142*q^26+248*q^25-212*q^24+309*q^23-229*q^22+311*q^21-170*q^20+263*q^19-141*q^18+263*q^17-170*q^16+311*q^15-229*q^14+309*q^13-212*q^12+248*q^11-142*q^10+131*q^9-61*q^8+57*q^7-16*q^6+15*q^5-3*q^4+4*q^3+q) \
    + a^-1*q^-18*(-q^36+q^35-6*q^34+8*q^33-24*q^32+22*q^31-54*q^30+46*q^29-105*q^28+80*q^27-185*q^26+168*q^25-347*q^24+332*q^23-574*q^22+547*q^21-798*q^20+701*q^19-888*q^18+701*q^17-798*q^16+547*q^15-574*q^14+332*q^13-347*q^12+168*q^11-185*q^10+80*q^9-105*q^8+46*q^7-54*q^6+22*q^5-24*q^4+8*q^3-6*q^2+q-1) \
    + a^-2*q^-18*(q^36-q^35+6*q^34-8*q^33+24*q^32-21*q^31+55*q^30-49*q^29+105*q^28-79*q^27+183*q^26-157*q^25+307*q^24-275*q^23+488*q^22-446*q^21+662*q^20-567*q^19+738*q^18-567*q^17+662*q^16-446*q^15+488*q^14-275*q^13+307*q^12-157*q^11+183*q^10-79*q^9+105*q^8-49*q^7+55*q^6-21*q^5+24*q^4-8*q^3+6*q^2-q+1) \
    - a^-3*q^-18*(q^35+4*q^33-3*q^32+16*q^31-16*q^30+56*q^29-60*q^28+130*q^27-144*q^26+250*q^25-239*q^24+356*q^23-327*q^22+431*q^21-351*q^20+452*q^19-368*q^18+452*q^17-351*q^16+431*q^15-327*q^14+356*q^13-239*q^12+250*q^11-144*q^10+130*q^9-60*q^8+56*q^7-16*q^6+16*q^5-3*q^4+4*q^3+q) \
    + a^-4*q^-15*(2*q^30-2*q^29+9*q^28-13*q^27+29*q^26-30*q^25+57*q^24-52*q^23+84*q^22-77*q^21+121*q^20-107*q^19+169*q^18-165*q^17+213*q^16-176*q^15+213*q^14-165*q^13+169*q^12-107*q^11+121*q^10-77*q^9+84*q^8-52*q^7+57*q^6-30*q^5+29*q^4-13*q^3+9*q^2-2*q+2) \
    - a^-5*q^-13*(q^26+2*q^24-3*q^22+18*q^21-28*q^20+61*q^19-94*q^18+144*q^17-178*q^16+226*q^15-245*q^14+264*q^13-245*q^12+226*q^11-178*q^10+144*q^9-94*q^8+61*q^7-28*q^6+18*q^5-3*q^4+2*q^2+1) \
    + a^-6*q^-10*(q^20-2*q^19+5*q^18-9*q^17+14*q^16-17*q^15+22*q^14-25*q^13+29*q^12-29*q^11+30*q^10-29*q^9+29*q^8-25*q^7+22*q^6-17*q^5+14*q^4-9*q^3+5*q^2-2*q+1))";

/// `[2,1]`-colored HOMFLY-PT polynomial of the Conway knot.
pub const CONWAY: &str = "\
    (-a^3*q^-10*(q^20-2*q^19+5*q^18-9*q^17+15*q^16-20*q^15+27*q^14-32*q^13+38*q^12-40*q^11+42*q^10-40*q^9+38*q^8-32*q^7+27*q^6-20*q^5+15*q^4-9*q^3+5*q^2-2*q+1) \
    + a^2*q^-13*(q^26+2*q^24+11*q^21-18*q^20+43*q^19-59*q^18+93*q^17-110*q^16+146*q^15-148*q^14+162*q^13-148*q^12+146*q^11-110*q^10+93*q^9-59*q^8+43*q^7-18*q^6+11*q^5+2*q^2+1) \
    + a*q^-15*(-2*q^30+2*q^29-7*q^28+5*q^27-15*q^26+11*q^25-28*q^24+12*q^23-43*q^22+34*q^21-85*q^20+59*q^19-125*q^18+110*q^17-166*q^16+110*q^15-166*q^14+110*q^13-125*q^12+59*q^11-85*q^10+34*q^9-43*q^8+12*q^7-28*q^6+11*q^5-15*q^4+5*q^3-7*q^2+2*q-2) \
    + q^-17*(q^34-q^33+6*q^32-3*q^31+11*q^30-5*q^29+31*q^28-15*q^27+63*q^26-47*q^25+130*q^24-81*q^23+169*q^22-91*q^21+185*q^20-52*q^19+155*q^18-41*q^17+155*q^16-52*q^15+185*q^14-91*q^13+169*q^12-81*q^11+130*q^10-47*q^9+63*q^8-15*q^7+31*q^6-5*q^5+11*q^4-3*q^3+6*q^2-q+1) \
    + a^-1*q^-17*(-3*q^34+3*q^33-8*q^32+q^31-12*q^30-13*q^29-59*q^27+38*q^26-144*q^25+124*q^24-294*q^23+258*q^22-471*q^21+411*q^20-628*q^19+509*q^18-690*q^17+509*q^16-628*q^15+411*q^14-471*q^13+258*q^12-294*q^11+124*q^10-144*q^9+38*q^8-59*q^7-13*q^5-12*q^4+q^3-8*q^2+3*q-3) \
    + a^-2*q^-17*(3*q^34-3*q^33+8*q^32-q^31+13*q^30+14*q^29-3*q^28+59*q^27-37*q^26+142*q^25-113*q^24+254*q^23-201*q^22+385*q^21-310*q^20+492*q^19-375*q^18+540*q^17-375*q^16+492*q^15-310*q^14+385*q^13-201*q^12+254*q^11-113*q^10+142*q^9-37*q^8+59*q^7-3*q^6+14*q^5+13*q^4-q^3+8*q^2-3*q+3) \
    + a^-3*q^-17*(-q^34+q^33-6*q^32+3*q^31-12*q^30+5*q^29-30*q^28+14*q^27-62*q^26+49*q^25-132*q^24+108*q^23-216*q^22+189*q^21-305*q^20+233*q^19-344*q^18+268*q^17-344*q^16+233*q^15-305*q^14+189*q^13-216*q^12+108*q^11-132*q^10+49*q^9-62*q^8+14*q^7-30*q^6+5*q^5-12*q^4+3*q^3-6*q^2+q-1) \
    + a^-4*q^-15*(2*q^30-2*q^29+7*q^28-6*q^27+17*q^26-11*q^25+27*q^24-13*q^23+38*q^22-26*q^21+73*q^20-64*q^19+131*q^18-138*q^17+193*q^16-156*q^15+193*q^14-138*q^13+131*q^12-64*q^11+73*q^10-26*q^9+38*q^8-13*q^7+27*q^6-11*q^5+17*q^4-6*q^3+7*q^2-2*q+2) \
    - a^-5*q^-13*(q^2+q+1)^2*(q^22-2*q^21+3*q^20-3*q^19+q^18+13*q^17-40*q^16+79*q^15-123*q^14+171*q^13-207*q^12+222*q^11-207*q^10+171*q^9-123*q^8+79*q^7-40*q^6+13*q^5+q^4-3*q^3+3*q^2-2*q+1) \
    + a^-6*q^-10*(q^20-2*q^19+5*q^18-9*q^17+14*q^16-17*q^15+22*q^14-25*q^13+29*q^12-29*q^11+30*q^10-29*q^9+29*q^8-25*q^7+22*q^6-17*q^5+14*q^4-9*q^3+5*q^2-2*q+1))";

/// Their difference, factored.
pub const DIFFERENCE_FACTORED: &str = "\
    a^-5*q^-18*(a-1)*(a-q^2)*(a*q^2-1)*(a-q^3)^2*(a*q^3-1)^2*(q-1)^2*(q^3-1)^2*(q^6-q^5+q^4-q^3+q^2-q+1)^2";

/// Shared value of both at `a = q^2`.
pub const JONES: &str = "\
    q^-6-2*q^-5+2*q^-4-2*q^-3+q^-2+2*q-2*q^2+2*q^3-q^4";

/// Difference of the two at `a = q^4`, factored.
pub const SL4_DIFFERENCE_FACTORED: &str = "\
    -q^-30*(1-q)^6*(1+q^2)*(1-q^3)^2*(1-q^6)*(1-q^14)^2";

/// Parses one of the constants above.
pub fn golden(text: &str) -> LaurentPoly {
    parse_poly(text).expect("reference polynomial parses")
}
