#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

#include "fvdsr/table_io.hpp"

using namespace fvdsr;

TEST(TableIo, FormatDouble) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(2.0), "2");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(std::stod(format_double(3.2969083094756151588)), 3.2969083094756151588);
}

TEST(TableIo, SpectrumCsv) {
    const SpectrumResult s = well_spectrum({1.0, 1.0, 2}, DeformationModel::gdsr(0.2, 1.0));
    std::ostringstream os;
    write_spectrum_csv(os, std::span(&s, 1));
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    EXPECT_EQ(header, "model,l_p,chi,alpha2,delta_alpha,n,E_plus,E_minus,spacing_plus,valid");
    EXPECT_EQ(row.rfind("gdsr,0.20000000000000001,1,0,0,1,2.268075245565", 0), 0u);
}

TEST(TableIo, ScanCsvAndJson) {
    ScanSeries series{DeformationModel::sr(), rt_scan(BarrierConfig{}, DeformationModel::sr(), std::vector{0.5, 1.5})};
    std::ostringstream csv;
    write_scan_csv(csv, std::span(&series, 1));
    std::istringstream is(csv.str());
    std::string header, first, second;
    std::getline(is, header);
    std::getline(is, first);
    std::getline(is, second);
    EXPECT_EQ(header, "model,l_p,chi,E,k,inner_regime,inner_value,R,T,flag");
    EXPECT_NE(first.find(",nan,nan,nonpropagating_incidence"), std::string::npos);
    EXPECT_NE(second.find(",evanescent,"), std::string::npos);
    EXPECT_NE(second.find(",tunneling"), std::string::npos);

    std::ostringstream js;
    write_scan_json(js, std::span(&series, 1));
    const auto rows = nlohmann::json::parse(js.str());
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0]["T"].is_null());
    EXPECT_EQ(rows[1]["T"].get<double>(), series.points[1].t_coef);
    EXPECT_EQ(rows[1]["flag"], "tunneling");
}

TEST(TableIo, ModelLabels) {
    EXPECT_EQ(model_label(DeformationModel::ac(0.1)), "ac");
    EXPECT_EQ(model_label(DeformationModel::ms(0.1)), "ms");
    EXPECT_EQ(model_label(DeformationModel::generic(0.1, 0.3, 0.0)), "generic");
    EXPECT_EQ(model_label(DeformationModel::dsr(0.1)), "dsr");
}
