// Hand-built CIM/E models, one busbar arrangement each. Node numbers are
// local to each fixture; component ids stay unique per kind within a file.
#pragma once

namespace fixtures {

// One 110 kV bus, a breaker feeder with an outgoing line, and a
// disconnector-only load feeder.
inline constexpr const char* kSingleBusFixture = R"(<Substation>
@ id name
# 1 ALPHA
</Substation>
<Bus>
@ id name volt node st
# 11 'MAIN BUS' 110 101 ALPHA
</Bus>
<Breaker>
@ id name volt node_i node_j point st
# 21 CB1 110 102 103 1 ALPHA
</Breaker>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DS1 110 101 102 1 ALPHA
# 32 DS2 110 101 104 1 ALPHA
</Disconnector>
<ACLine>
@ id name volt node_i node_j st
# 41 LN1 110 103 NULL ALPHA
</ACLine>
<Load>
@ id name volt node st
# 51 LD1 110 104 ALPHA
</Load>
)";

// Two 220 kV buses; each feeder reaches both through a disconnector pair,
// and a bus coupler joins them.
inline constexpr const char* kDoubleBusFixture = R"(<Substation>
@ id name
# 1 BRAVO
</Substation>
<Bus>
@ id name volt node st
# 11 W1 220 201 BRAVO
# 12 W2 220 202 BRAVO
</Bus>
<Breaker>
@ id name volt node_i node_j point st
# 21 CB1 220 210 211 1 BRAVO
# 22 CB2 220 220 221 1 BRAVO
# 23 CPL 220 230 231 1 BRAVO
</Breaker>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DS1A 220 201 210 1 BRAVO
# 32 DS1B 220 202 210 0 BRAVO
# 33 DS2A 220 201 220 0 BRAVO
# 34 DS2B 220 202 220 1 BRAVO
# 35 DSCA 220 201 230 1 BRAVO
# 36 DSCB 220 231 202 1 BRAVO
</Disconnector>
<ACLine>
@ id name volt node_i node_j st
# 41 LN1 220 211 NULL BRAVO
</ACLine>
<Load>
@ id name volt node st
# 51 LD1 220 221 BRAVO
</Load>
)";

// Two 110 kV bus sections joined by a disconnector-breaker-disconnector
// bridge; each section keeps a private feeder.
inline constexpr const char* kSectionalizerFixture = R"(<Substation>
@ id name
# 1 CHARLIE
</Substation>
<Bus>
@ id name volt node st
# 11 SEC1 110 301 CHARLIE
# 12 SEC2 110 302 CHARLIE
</Bus>
<Breaker>
@ id name volt node_i node_j point st
# 21 TIE 110 310 311 1 CHARLIE
# 22 CB1 110 320 321 1 CHARLIE
# 23 CB2 110 330 331 1 CHARLIE
</Breaker>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DTA 110 301 310 1 CHARLIE
# 32 DTB 110 311 302 1 CHARLIE
# 33 DS1 110 301 320 1 CHARLIE
# 34 DS2 110 302 330 1 CHARLIE
</Disconnector>
<ACLine>
@ id name volt node_i node_j st
# 41 LN1 110 321 NULL CHARLIE
# 42 LN2 110 331 NULL CHARLIE
</ACLine>
)";

// A 220 kV main bus with two line bays, each tied to the bypass bus through
// a normally open disconnector.
inline constexpr const char* kBypassFixture = R"(<Substation>
@ id name
# 1 DELTA
</Substation>
<Bus>
@ id name volt node st
# 11 MAIN 220 401 DELTA
# 12 BYP 220 402 DELTA
</Bus>
<Breaker>
@ id name volt node_i node_j point st
# 21 CB1 220 410 411 1 DELTA
# 22 CB2 220 420 421 1 DELTA
</Breaker>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DS1A 220 401 410 1 DELTA
# 32 DS1B 220 411 412 1 DELTA
# 33 DS1P 220 412 402 0 DELTA
# 34 DS2A 220 401 420 1 DELTA
# 35 DS2B 220 421 422 1 DELTA
# 36 DS2P 220 422 402 0 DELTA
</Disconnector>
<ACLine>
@ id name volt node_i node_j st
# 41 LN1 220 412 NULL DELTA
# 42 LN2 220 422 NULL DELTA
</ACLine>
)";

// Two 500 kV buses joined by two full switch strings, one outgoing line
// tapped at the middle of each string.
inline constexpr const char* kBreakerAndHalfFixture = R"(<Substation>
@ id name
# 1 ECHO
</Substation>
<Bus>
@ id name volt node st
# 11 N1 500 501 ECHO
# 12 N2 500 502 ECHO
</Bus>
<Breaker>
@ id name volt node_i node_j point st
# 21 CB1A 500 510 511 1 ECHO
# 22 CB1B 500 513 514 1 ECHO
# 23 CB2A 500 520 521 1 ECHO
# 24 CB2B 500 523 524 1 ECHO
</Breaker>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DS1A 500 501 510 1 ECHO
# 32 DS1B 500 511 512 1 ECHO
# 33 DS1C 500 512 513 1 ECHO
# 34 DS1D 500 514 502 1 ECHO
# 35 DS2A 500 501 520 1 ECHO
# 36 DS2B 500 521 522 1 ECHO
# 37 DS2C 500 522 523 1 ECHO
# 38 DS2D 500 524 502 1 ECHO
</Disconnector>
<ACLine>
@ id name volt node_i node_j st
# 41 LN1 500 512 NULL ECHO
# 42 LN2 500 522 NULL ECHO
</ACLine>
)";

// Three bus voltage levels chained by two-winding transformers:
// 500 kV -> 220 kV -> 35 kV, every region a single bus.
inline constexpr const char* kThreeLevelFixture = R"(<Substation>
@ id name
# 1 FOXTROT
</Substation>
<Bus>
@ id name volt node st
# 11 HV 500 601 FOXTROT
# 12 MV 220 602 FOXTROT
# 13 LV 35 603 FOXTROT
</Bus>
<Breaker>
@ id name volt node_i node_j point st
# 21 CBH1 500 610 611 1 FOXTROT
# 22 CBHT 500 620 621 1 FOXTROT
# 23 CBMT 220 630 631 1 FOXTROT
# 24 CBM1 220 640 641 1 FOXTROT
# 25 CBMD 220 650 651 1 FOXTROT
# 26 CBLT 35 660 661 1 FOXTROT
# 27 CBL1 35 680 681 1 FOXTROT
</Breaker>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DSH1 500 601 610 1 FOXTROT
# 32 DSHT 500 601 620 1 FOXTROT
# 33 DSMT 220 602 630 1 FOXTROT
# 34 DSM1 220 602 640 1 FOXTROT
# 35 DSMD 220 602 650 1 FOXTROT
# 36 DSLT 35 603 660 1 FOXTROT
# 37 DSL1 35 603 670 1 FOXTROT
# 38 DSL2 35 603 680 1 FOXTROT
</Disconnector>
<ACLine>
@ id name volt node_i node_j st
# 41 LNH1 500 611 NULL FOXTROT
# 42 LNM1 220 641 NULL FOXTROT
</ACLine>
<Load>
@ id name volt node st
# 51 LDL1 35 670 FOXTROT
</Load>
<Transformer2W>
@ id name volt_i volt_j node_i node_j st
# 61 T1 500 220 621 631 FOXTROT
# 62 T2 220 35 651 661 FOXTROT
</Transformer2W>
<Compensator>
@ id name volt node st
# 71 CP1 35 681 FOXTROT
</Compensator>
)";

// Buses at five distinct voltages; the layout engine refuses the station.
inline constexpr const char* kFiveLevelFixture = R"(<Substation>
@ id name
# 1 GOLF
</Substation>
<Bus>
@ id name volt node st
# 11 B500 500 701 GOLF
# 12 B330 330 702 GOLF
# 13 B220 220 703 GOLF
# 14 B110 110 704 GOLF
# 15 B35 35 705 GOLF
</Bus>
<Disconnector>
@ id name volt node_i node_j point st
# 31 DS1 500 701 711 1 GOLF
# 32 DS2 330 702 712 1 GOLF
# 33 DS3 220 703 713 1 GOLF
# 34 DS4 110 704 714 1 GOLF
# 35 DS5 35 705 715 1 GOLF
</Disconnector>
<Load>
@ id name volt node st
# 51 LD1 500 711 GOLF
# 52 LD2 330 712 GOLF
# 53 LD3 220 713 GOLF
# 54 LD4 110 714 GOLF
# 55 LD5 35 715 GOLF
</Load>
)";

}  // namespace fixtures
