#include "kbw/golden.hpp"

// Reference tables copied cell for cell from the published values, including
// their misprints. Comparisons against recomputed values live in checks.cpp.

namespace kbw::golden {

const std::vector<Table1Row>& table1() {
  static const std::vector<Table1Row> rows = {
      {3, "4", 1, "2", 2},
      {5, "34", 4, "15", 0},
      {7, "874", 6, "203", 0},
      {11, "4037914", 1, "115975", 2},
      {13, "522956314", 10, "4213597", 11},
      {17, "22324392524314", 13, "10480142147", 14},
  };
  return rows;
}

const std::vector<Table2Row>& table2() {
  static const std::vector<Table2Row> rows = {
      {3, "1", "0", "1", "0"},
      {5, "5", "13", "4", "66/5"},
      {7, "103", "1356", "96", "1357"},
  };
  return rows;
}

const std::vector<PrimeValueRow>& gertsch() {
  static const std::vector<PrimeValueRow> rows = {
      {3, "1"},
      {5, "4"},
      {7, "96"},
      {11, "356540"},
      {13, "39903286"},
      {17, "1312583081304"},
      {19, "356826497344324"},
      {23, "51202108292508282304"},
      {29, "10903333036235662560405182340"},
      {31, "8851961858819132893480466080328"},
      {37, "10341369256681418109100257759613689061054"},
      {41, "20410983764150196478167108200311379711212644128"},
      {43, "33471988248845076246704814844693140092683344053436"},
      {47, "119680095889593902169611731792572420181399897412939250680"},
      {53, "1551704320329449188553505544936791636242289216222193046404083939884"},
      {59, "40539189508131106145581275089019179146420416222458964156217471022804657603628"},
      {61, "138722328581443601889768771573817998285456423842798757803191931619802810589153798"},
  };
  return rows;
}

const std::vector<PrimeValueRow>& agoh_giuga() {
  static const std::vector<PrimeValueRow> rows = {
      {3, "1/2"},
      {5, "1/6"},
      {7, "1/6"},
      {11, "1/6"},
      {13, "-37/210"},
      {17, "-211/30"},
      {19, "2311/42"},
      {23, "37153/6"},
      {29, "-818946931/30"},
      {31, "277930363757/422"},
      {37, "-711223555487930419/51870"},
      {41, "-6367871182840222481/330"},
      {43, "35351107998094669831/42"},
      {47, "12690449182849194963361/6"},
      {53, "-15116334304443206742413679091/30"},
      {59, "1431925649981017658678758915153153/6"},
      {61, "-19921854762028779869513196624259348280501/930930"},
      {67, "21979104807855756030621185500775109585700001/966"},
      {71, "2120255418779301462015162920814890260724481131/66"},
      {73, "-79834999474930741238880510200562566647705319203319743/1919190"},
      {79, "5251219817410137067027582728475216120154422473068360551/42"},
      {83, "20204989749218624540038006142003251809731759368316306203393/6"},
      {89, "-14735129086224915820174285663138335318491576130022793756145167309813/690"},
      {97, "-2181447933992438279356677609379631274979834581330517877841636427010831632473617/46410"},
  };
  return rows;
}

const std::vector<LongRow>& longtable() {
  static const std::vector<LongRow> rows = {
      {3, 2, 1, "Fractional"},
      {5, 0, 0, "3"},
      {7, 0, 5, "6"},
      {11, 2, 1, "Fractional"},
      {13, 11, 0, "Fractional"},
      {17, 14, 5, "Fractional"},
      {19, 10, 2, "Fractional"},
      {23, 22, 8, "Fractional"},
      {29, 18, 18, "Fractional"},
      {31, 3, 19, "Fractional"},
      {37, 6, 7, "Fractional"},
      {41, 5, 16, "Fractional"},
      {43, 17, 13, "Fractional"},
      {47, 19, 6, "Fractional"},
      {53, 14, 34, "Fractional"},
      {59, 29, 27, "Fractional"},
      {61, 23, 56, "Fractional"},
      {67, 66, 12, "Fractional"},
      {71, 69, 69, "Fractional"},
      {73, 56, 11, "Fractional"},
      {79, 21, 73, "Fractional"},
      {83, 28, 20, "Fractional"},
      {89, 77, 70, "Fractional"},
      {97, 81, 70, "Fractional"},
      {101, 14, 72, "Fractional"},
      {103, 51, 57, "Fractional"},
      {107, 44, 1, "Fractional"},
      {109, 66, 30, "Fractional"},
      {113, 110, 95, "Fractional"},
      {127, 57, 71, "Fractional"},
      {131, 82, 119, "Fractional"},
      {137, 94, 56, "Fractional"},
      {139, 135, 67, "Fractional"},
      {149, 83, 94, "Fractional"},
      {151, 11, 86, "Fractional"},
      {157, 132, 151, "Fractional"},
      {163, 5, 108, "Fractional"},
      {167, 31, 21, "Fractional"},
      {173, 105, 106, "Fractional"},
      {179, 30, 48, "Fractional"},
      {181, 171, 72, "Fractional"},
      {191, 105, 159, "Fractional"},
      {193, 166, 35, "Fractional"},
      {197, 10, 147, "Fractional"},
      {199, 123, 118, "Fractional"},
      {211, 131, 173, "Fractional"},
      {223, 43, 180, "Fractional"},
      {227, 226, 113, "Fractional"},
      {229, 51, 131, "Fractional"},
      {233, 70, 169, "Fractional"},
      {239, 13, 107, "Fractional"},
      {241, 129, 196, "Fractional"},
      {251, 61, 214, "Fractional"},
      {257, 148, 177, "Fractional"},
      {263, 53, 73, "Fractional"},
      {269, 17, 121, "Fractional"},
      {271, 57, 170, "Fractional"},
      {277, 8, 25, "Fractional"},
      {281, 219, 277, "Fractional"},
      {283, 155, 164, "Fractional"},
      {293, 265, 231, "Fractional"},
      {307, 199, 271, "Fractional"},
      {311, 49, 259, "Fractional"},
      {313, 300, 288, "Fractional"},
      {317, 206, 110, "Fractional"},
      {331, 252, 164, "Fractional"},
      {337, 102, 41, "Fractional"},
      {347, 135, 235, "Fractional"},
      {349, 344, 8, "Fractional"},
      {353, 76, 151, "Fractional"},
      {359, 91, 184, "Fractional"},
      {367, 183, 100, "Fractional"},
      {373, 3, 224, "Fractional"},
      {379, 74, 133, "Fractional"},
      {383, 102, 122, "Fractional"},
      {389, 99, 234, "Fractional"},
      {397, 153, 219, "Fractional"},
      {401, 184, 235, "Fractional"},
      {409, 385, 151, "Fractional"},
      {419, 119, 375, "Fractional"},
      {421, 307, 7, "Fractional"},
      {431, 166, 392, "Fractional"},
      {433, 154, 371, "Fractional"},
      {439, 227, 375, "Fractional"},
      {443, 183, 149, "Fractional"},
      {449, 166, 412, "Fractional"},
      {457, 182, 246, "Fractional"},
      {461, 421, 55, "Fractional"},
      {463, 42, 417, "Fractional"},
      {467, 4, 77, "Fractional"},
      {479, 284, 299, "Fractional"},
      {487, 258, 89, "Fractional"},
      {491, 236, 318, "Fractional"},
      {499, 131, 422, "Fractional"},
      {503, 246, 458, "Fractional"},
      {509, 369, 379, "Fractional"},
      {521, 165, 170, "Fractional"},
      {523, 513, 10, "Fractional"},
      {541, 280, 194, "Fractional"},
      {547, 169, 397, "Fractional"},
      {557, 391, 96, "Fractional"},
      {563, 107, 0, "Fractional"},
  };
  return rows;
}

const std::vector<FactorRow>& factorizations() {
  static const std::vector<FactorRow> rows = {
      {3, "3"},
      {4, "3^2"},
      {5, "3x11"},
      {6, "3^2x17"},
      {7, "3^2x97"},
      {8, "3^4x73"},
      {9, "3^2x11x467"},
      {10, "3^2x131x347"},
      {11, "3^2x11x40787"},
      {12, "3^2x11x443987"},
      {13, "3^2x11^2x23x20879"},
      {14, "3^2x11x821x83047"},
      {15, "3^2x11x2789x340183"},
      {16, "3^2x11x107x509x259949"},
      {17, "3^2x11x225498914387"},
      {18, "3^2x11x163x20143x1162943"},
      {19, "3^2x11x19727x3471827581"},
      {20, "3^2x11x29x43x1621x641751001"},
      {21, "3^2x11x53x67x662348503367"},
      {22, "3^2x11x877x3203x41051x4699727"},
      {23, "3^2x11x11895484822660898387"},
      {24, "3^2x11x139x2129333x922459185301"},
      {25, "3^2x11x37^2x29131483x163992440081"},
      {26, "3^2x11x454823x519472957x690821017"},
      {27, "3^2x11x107x173x7823x12227x1281439x1867343"},
      {28, "3^2x11x431363x2882477797x91865833117"},
      {29, "3^2x11x191x47793258077x349882390108241"},
      {30, "3^2x11x37x283x5087x1736655143086866180331"},
  };
  return rows;
}

const std::vector<PrimeValueRow>& hodge() {
  static const std::vector<PrimeValueRow> rows = {
      {1, "-1/24"},
      {2, "7/5760"},
      {3, "-31/9676780"},
      {4, "127/154828800"},
      {5, "-73/3503554560"},
      {6, "1414477/2678117105664000"},
  };
  return rows;
}

}  // namespace kbw::golden
