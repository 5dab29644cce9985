#pragma once

// Schedule DSL corpus shared by the unit tests and the acceptance suite.

#include <string>
#include <vector>

#include "lzsim/schedule.hpp"

namespace corpus {

inline std::vector<std::string> well_formed() {
    std::vector<std::string> texts = {
        "segment dur=25ns delta0=100MHz delta1=-100MHz omega=20MHz\n"
        "segment dur=50ns delta0=-100MHz omega=0MHz phase0=0rad phase1=1.0pi\n"
        "gate at=50ns axis=x angle=1.0pi\n",

        "# two-tone program\n"
        "segment dur=10ns delta0=0MHz omega=20MHz phase0=90deg\n"
        "gate at=5ns axis=y angle=0.5pi\n",

        "segment dur=1us delta0=-3.5MHz delta1=3.5MHz omega=1.25MHz phase0=45deg phase1=-45deg\n",

        "segment dur=0.5ns delta0=2GHz\n",

        "gate at=0ns axis=x angle=180deg\n"
        "segment dur=118ns delta0=0MHz\n",

        "segment dur=50ns delta0=0MHz   # free evolution\n"
        "gate at=0ns axis=x angle=0.5pi\n"
        "gate at=25ns axis=x angle=1pi\n"
        "gate at=50ns axis=x angle=0.5pi\n",

        "segment dur=3ns delta0=7MHz delta1=-13MHz omega=2MHz phase0=0.25pi phase1=1.75pi\n"
        "segment dur=4ns delta0=-13MHz omega=0.5MHz phase1=2rad\n"
        "segment dur=5ns delta0=-13MHz delta1=7MHz omega=2MHz phase0=2rad\n",

        "# comment-only lines and blanks are ignored\n"
        "\n"
        "segment dur=12.5ns delta0=1e2MHz delta1=-1e2MHz omega=2e1MHz\n"
        "\n"
        "# trailing comment\n",

        "segment dur=7ns delta0=-0.125MHz omega=0.0625MHz phase0=-0.5pi\n"
        "gate at=3.5ns axis=y angle=-90deg\n",

        "segment dur=9ns delta0=55MHz delta1=54MHz omega=3MHz phase0=1rad phase1=1rad\n"
        "gate at=9ns axis=x angle=0.125pi\n",
    };

    // Builder output is part of the dialect too.
    using namespace lzsim;
    const double tp = 2.5e-8, tc = 1e-7;
    const double d0 = 6.283185307179586e8, om = 1.2566370614359172e8;
    texts.push_back(serialize_schedule(build_glzi(d0, om, 0.0, tp, tc)));
    texts.push_back(serialize_schedule(build_glzi(d0, om, 0.7853981633974483, tp, tc)));
    texts.push_back(serialize_schedule(build_glzi(d0, om, 1.5707963267948966, tp, tc)));
    texts.push_back(serialize_schedule(build_glzi(d0, om, 2.356194490192345, tp, tc)));
    texts.push_back(serialize_schedule(build_glzi(2 * d0, om, 0.3, 1e-8, 9e-8)));
    texts.push_back(serialize_schedule(build_dlzi(d0, om, 0.0, tp, tc)));
    texts.push_back(serialize_schedule(build_dlzi(d0, om, 1.1, tp, 1.6e-7)));
    texts.push_back(serialize_schedule(build_dlzi(d0, om, 4.0, 4e-8, 1.2e-7)));
    texts.push_back(serialize_schedule(build_t1(1.18e-7)));
    texts.push_back(serialize_schedule(build_t1(0.0)));
    texts.push_back(serialize_schedule(build_t2_echo(5e-8)));
    texts.push_back(serialize_schedule(build_t2_echo(0.0)));
    return texts;
}

struct Malformed {
    std::string text;
    lzsim::ParseError::Kind kind;
    int line;
    int column;
};

inline std::vector<Malformed> malformed() {
    using K = lzsim::ParseError::Kind;
    return {
        {"segment dur=-5ns delta0=1MHz\n", K::NegativeDuration, 1, 1},
        {"segmnt dur=5ns\n", K::Syntax, 1, 1},
        {"segment dur=5ns\nsegment dur=5ns foo=1MHz\n", K::UnknownKey, 2, 17},
        {"gate at=5ns axis=z angle=1rad\nsegment dur=9ns delta0=0MHz\n", K::Syntax,
         1, 18},
        {"segment dur=5ns delta0=100\n", K::Unit, 1, 27},
        {"# leading comment\n\nsegment dur=5ns delta0=1MHz\nsegment dur=4ns omega=1kHz\n",
         K::Unit, 4, 24},
        {"segment dur=5s delta0=1MHz\n", K::Unit, 1, 14},
        {"gate at=5ns angle=1rad\nsegment dur=9ns delta0=0MHz\n", K::Syntax, 1, 1},
        {"segment delta0=1MHz\n", K::Syntax, 1, 1},
        {"segment dur=5ns delta0=1MHz\ngate at=500ns axis=x angle=1rad\n", K::Syntax,
         2, 1},
    };
}

}  // namespace corpus
