#include <tconv/suites.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tconv;

namespace
{

std::string slurp( const std::filesystem::path& p )
{
    std::ifstream in( p );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture( const std::string& name ) { return slurp( std::filesystem::path( TCONV_MODELS_DIR ) / name ); }

report run_fixture( const std::string& name, std::vector<std::string> suites = {} )
{
    const budgets limits;
    const auto m = build_model( parse_model( fixture( name + ".tconv" ) ), limits, name );
    return run_suite( m, std::move( suites ), 1, limits );
}

template <typename Fn>
diagnostic expect_diagnostic( Fn&& fn )
{
    try
    {
        fn();
    }
    catch ( const diagnostic& d )
    {
        return d;
    }
    ADD_FAILURE() << "no diagnostic raised";
    return diagnostic( error_kind::syntax_error, {}, "none" );
}

std::vector<std::string> failing_suites( const report& r )
{
    std::vector<std::string> out;
    for ( const auto& e : r.entries )
        if ( e.kind == verdict_kind::fail && e.check != "lattice-valid" && ( out.empty() || out.back() != e.suite ) )
            out.push_back( e.suite );
    return out;
}

} // namespace

TEST( ModelParse, EveryFixtureParsesAndRoundTrips )
{
    std::size_t seen = 0;
    for ( const auto& entry : std::filesystem::directory_iterator( TCONV_MODELS_DIR ) )
    {
        if ( entry.path().extension() != ".tconv" )
            continue;
        ++seen;
        const auto doc = parse_model( slurp( entry.path() ) );
        const auto again = parse_model( emit_model( doc ) );
        EXPECT_EQ( doc, again ) << entry.path();
        EXPECT_EQ( emit_model( again ), emit_model( doc ) );
        EXPECT_NO_THROW( build_model( doc, budgets{} ) ) << entry.path();
    }
    EXPECT_GE( seen, 11u );
}

TEST( ModelParse, UnknownLatticeElementIsReportedAtItsPosition )
{
    const std::string text = "[lattice]\nbuiltin = boolean 1\n\n[group]\nbuiltin = Z2\n\n[filters]\nF = 1 q\n";
    const auto d = expect_diagnostic( [ & ] { build_model( parse_model( text ), budgets{} ); } );
    EXPECT_EQ( d.kind(), error_kind::unresolved_reference );
    EXPECT_EQ( d.line(), 8u );
    EXPECT_EQ( d.column(), 7u );
    EXPECT_NE( std::string( d.what() ).find( "line 8, column 7" ), std::string::npos );
}

TEST( ModelParse, UnknownFilterInConvergenceIsUnresolved )
{
    const std::string text = "[lattice]\nbuiltin = boolean 1\n[group]\nbuiltin = Z2\n[convergence]\nbuiltin = discrete\n"
                             "drop = nowhere e\n";
    const auto d = expect_diagnostic( [ & ] { build_model( parse_model( text ), budgets{} ); } );
    EXPECT_EQ( d.kind(), error_kind::unresolved_reference );
    EXPECT_EQ( d.line(), 7u );
}

TEST( ModelParse, ShortStarRowIsADimensionMismatch )
{
    const std::string text = "[lattice]\ncarrier = 0 1\nleq = 0 1\nstar 0 = 0 0\nstar 1 = 0\n";
    const auto d = expect_diagnostic( [ & ] { build_model( parse_model( text ), budgets{} ); } );
    EXPECT_EQ( d.kind(), error_kind::dimension_mismatch );
    EXPECT_EQ( d.line(), 5u );
}

TEST( ModelParse, SyntaxErrorsCarryPositions )
{
    const auto d = expect_diagnostic( [] { parse_model( "[lattice\n" ); } );
    EXPECT_EQ( d.kind(), error_kind::syntax_error );
    EXPECT_EQ( d.line(), 1u );
    const auto e = expect_diagnostic( [] { parse_model( "[lattice]\nbuiltin boolean 1\n" ); } );
    EXPECT_EQ( e.line(), 2u );
    const auto f = expect_diagnostic( [] { parse_model( "[nonsense]\n" ); } );
    EXPECT_NE( std::string( f.what() ).find( "nonsense" ), std::string::npos );
}

TEST( ModelParse, WrongMemberLengthIsADimensionMismatch )
{
    const std::string text = "[lattice]\nbuiltin = boolean 1\n[group]\nbuiltin = Z3\n[filters]\nF = 1 1\n";
    const auto d = expect_diagnostic( [ & ] { build_model( parse_model( text ), budgets{} ); } );
    EXPECT_EQ( d.kind(), error_kind::dimension_mismatch );
    EXPECT_EQ( d.line(), 6u );
}

TEST( ModelParse, CatalogueListsEverySuite )
{
    const auto& cat = suite_catalogue();
    EXPECT_EQ( cat.size(), 11u );
    EXPECT_EQ( cat.back(), "all-theorems" );
    EXPECT_EQ( expand_suites( { "all-theorems" } ).size(), 10u );
}

TEST( Reports, DeterministicForAFixedSeed )
{
    const auto a = run_fixture( "chain3-lukasiewicz-z2", { "fuzzy-lemmas", "filter-products", "uniform" } );
    const auto b = run_fixture( "chain3-lukasiewicz-z2", { "fuzzy-lemmas", "filter-products", "uniform" } );
    EXPECT_EQ( to_text( a ), to_text( b ) );
    EXPECT_EQ( to_json( a ).dump(), to_json( b ).dump() );
    EXPECT_FALSE( a.failed() );
}

TEST( Reports, JsonFollowsTheSchema )
{
    const auto r = run_fixture( "z2-boolean-discrete", { "lattice-axioms" } );
    const auto j = to_json( r );
    EXPECT_EQ( j[ "model" ], "z2-boolean-discrete" );
    EXPECT_EQ( j[ "seed" ], 1 );
    EXPECT_EQ( j[ "budgets" ][ "enumeration" ], 20000 );
    ASSERT_FALSE( j[ "verdicts" ].empty() );
    for ( const auto& v : j[ "verdicts" ] )
    {
        EXPECT_EQ( v[ "suite" ], "lattice-axioms" );
        EXPECT_TRUE( v.contains( "check" ) && v.contains( "verdict" ) && v.contains( "detail" ) );
    }
    EXPECT_EQ( j[ "summary" ][ "pass" ], r.count( verdict_kind::pass ) );
    EXPECT_FALSE( j.contains( "timing" ) );
}

TEST( Reports, ValidModelsHaveNoFailures )
{
    for ( const auto* name : { "z2-boolean-discrete", "chain3-godel-z2" } )
    {
        const auto r = run_fixture( name );
        EXPECT_FALSE( r.failed() ) << to_text( r );
        EXPECT_GT( r.count( verdict_kind::pass ), 50u );
    }
}

TEST( Reports, MutationsFailWithWitnesses )
{
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
            { "mut-dropped-point",
              { "characterization", "localization", "classification", "uniformization", "power" } },
            { "mut-dropped-top", { "characterization", "localization", "uniformization", "power" } },
            { "mut-corrupt-star", { "lattice-axioms", "fuzzy-lemmas", "filter-products", "classification" } },
            { "mut-nondistributive", { "lattice-axioms", "fuzzy-lemmas", "cd-lemma" } },
            { "mut-missing-transpose", { "uniform" } },
    };
    for ( const auto& [ name, suites ] : expected )
    {
        const auto r = run_fixture( name );
        for ( const auto& s : suites )
        {
            const auto fails = failing_suites( r );
            EXPECT_NE( std::find( fails.begin(), fails.end(), s ), fails.end() ) << name << " " << s;
        }
        for ( const auto& e : r.entries )
            if ( e.kind == verdict_kind::fail )
                EXPECT_FALSE( e.detail.empty() ) << name << " " << e.suite << "/" << e.check;
    }
}

TEST( Reports, MissingPartsAreSkippedNotFailed )
{
    const budgets limits;
    const auto m = build_model( parse_model( "[lattice]\nbuiltin = chain 3 godel\n" ), limits, "bare" );
    const auto r = run_suite( m, { "all-theorems" }, 1, limits );
    EXPECT_FALSE( r.failed() ) << to_text( r );
    EXPECT_GT( r.count( verdict_kind::skipped ), 0u );
}
