#include "kissbound/published.hpp"

namespace kissbound {

const std::vector<PublishedRow>& published_table() {
  static const std::vector<PublishedRow> rows{
      {3, 12, "12.38180947", "12.381921", "12.374682", "12.368591"},
      {4, 24, "24.06628391", "24.066298", "24.062758", "24.056903"},
      {5, 40, "44.99899685", "44.999047", "44.987727", "44.981067"},
      {6, 72, "78.24061272", "78.240781", "78.212731", "78.187761"},
      {7, 126, "134.4488169", "134.456246", "134.330898", "134.270201"},
      {9, 306, "364.0919287", "364.104934", "363.888016", "363.675154"},
      {10, 500, "554.5075418", "554.522392", "554.225840", "553.827497"},
      {11, 582, "870.8831157", "870.908146", "869.874183", "869.244985"},
      {12, 840, "1357.889300", "1357.934329", "1357.118955", "1356.603728"},
      {13, 1154, "2069.587585", "2069.675634", "2067.388613", "2066.405173"},
      {14, 1606, "3183.133169", "3183.348148", "3180.112464", "3177.917052"},
      {15, 2564, "4866.245659", "4866.795537", "4862.382161", "4858.505436"},
      {16, 4320, "7355.809036", "7356.238006", "7341.324655", "7332.776399"},
      {17, 5346, "11072.37543", "11073.844334", "11030.170254", "11014.183845"},
      {18, 7398, "16572.26478", "16575.934858", "16489.848647", "16469.090329"},
      {19, 10668, "24812.30254", "24819.810569", "24654.968481", "24575.871259"},
      {20, 17400, "36764.40138", "36761.630730", "36522.436885", "36402.675795"},
      {21, 27720, "54584.76757", "54579.036297", "54069.067238", "53878.722941"},
      {22, 49896, "82340.08003", "82338.035075", "81688.317095", "81376.459564"},
      {23, 93150, "124416.9796", "124509.320059", "123756.492951", "123328.397290"},
  };
  return rows;
}

std::optional<std::string> published_upper(int n, int d) {
  for (const auto& row : published_table()) {
    if (row.n != n) continue;
    switch (d) {
      case 14: return row.upper_d14;
      case 15: return row.upper_d15;
      case 16: return row.upper_d16;
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<long> published_lower(int n) {
  for (const auto& row : published_table()) {
    if (row.n == n) return row.lower;
  }
  return std::nullopt;
}

}  // namespace kissbound
