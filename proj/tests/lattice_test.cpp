#include <tconv/lattice.hpp>

#include <gtest/gtest.h>

using namespace tconv;

namespace
{

// Residuum by direct scan, independent of the library's derive_arrow.
lat scan_arrow( const residuated_lattice& L, lat a, lat b )
{
    lat best = L.bot();
    for ( std::size_t c = 0; c < L.size(); ++c )
        if ( L.leq( L.star( a, lat( c ) ), b ) )
            best = L.join( best, lat( c ) );
    return best;
}

lattice_description chain3( std::vector<std::vector<lat>> star )
{
    return { { "0", "h", "1" }, { { 0, 1 }, { 1, 2 } }, std::move( star ) };
}

lattice_description diamond_meet()
{
    lattice_description d{ { "0", "p", "q", "1" }, { { 0, 1 }, { 0, 2 }, { 1, 3 }, { 2, 3 } }, {} };
    d.star_rows = { { 0, 0, 0, 0 }, { 0, 1, 0, 1 }, { 0, 0, 2, 2 }, { 0, 1, 2, 3 } };
    return d;
}

std::vector<residuated_lattice> builtins()
{
    std::vector<residuated_lattice> out;
    for ( std::size_t n = 2; n <= 6; ++n )
    {
        out.push_back( build_chain( n, chain_flavor::lukasiewicz ) );
        out.push_back( build_chain( n, chain_flavor::godel ) );
    }
    for ( std::size_t k = 1; k <= 3; ++k )
        out.push_back( build_boolean( k ) );
    return out;
}

} // namespace

TEST( Lattice, TwoChainGodelIsBooleanFrame )
{
    const auto L = build_chain( 2, chain_flavor::godel );
    EXPECT_TRUE( L.is_frame() );
    EXPECT_TRUE( L.is_cd() );
    EXPECT_TRUE( L.is_mv() );
    EXPECT_EQ( L, build_boolean( 1 ) );
}

TEST( Lattice, ThreeChainLukasiewiczValues )
{
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto h = *L.find( "1/2" );
    EXPECT_EQ( L.star( h, h ), L.bot() );
    EXPECT_EQ( L.arrow( h, L.bot() ), h );
    EXPECT_EQ( scan_arrow( L, h, L.bot() ), h );
}

TEST( Lattice, ThreeChainGodelArrow )
{
    const auto L = build_chain( 3, chain_flavor::godel );
    EXPECT_EQ( L.arrow( *L.find( "1/2" ), L.bot() ), L.bot() );
}

TEST( Lattice, ChainRejectsShortLength )
{
    EXPECT_THROW( build_chain( 1, chain_flavor::godel ), error );
    EXPECT_THROW( build_boolean( 0 ), error );
}

TEST( Lattice, BooleanTwoIsDiamondFrame )
{
    const auto L = build_boolean( 2 );
    EXPECT_EQ( L.size(), 4u );
    EXPECT_TRUE( L.is_frame() && L.is_cd() && L.is_mv() );
    std::size_t triples = 0;
    for ( std::size_t a = 0; a < 4; ++a )
        for ( std::size_t b = 0; b < 4; ++b )
            for ( std::size_t c = 0; c < 4; ++c, ++triples )
                EXPECT_EQ( L.leq( L.star( lat( a ), lat( c ) ), lat( b ) ), L.leq( lat( c ), L.arrow( lat( a ), lat( b ) ) ) );
    EXPECT_EQ( triples, 64u );
}

TEST( Lattice, FromTablesMinIsFrame )
{
    const auto L = build_from_tables( chain3( { { 0, 0, 0 }, { 0, 1, 1 }, { 0, 1, 2 } } ) );
    EXPECT_TRUE( L.is_frame() );
    EXPECT_TRUE( verify_axioms( L ).all_pass() );
}

TEST( Lattice, FromTablesAllBottomHasNoUnit )
{
    try
    {
        build_from_tables( chain3( { { 0, 0, 0 }, { 0, 0, 0 }, { 0, 0, 0 } } ) );
        FAIL() << "expected no-unit";
    }
    catch ( const error& e )
    {
        EXPECT_EQ( e.kind(), error_kind::no_unit );
    }
}

TEST( Lattice, FromTablesNonCommutativeStar )
{
    try
    {
        build_from_tables( chain3( { { 0, 0, 0 }, { 0, 0, 1 }, { 0, 0, 2 } } ) );
        FAIL() << "expected an error";
    }
    catch ( const error& e )
    {
        EXPECT_EQ( e.kind(), error_kind::star_axiom_violation );
        EXPECT_NE( std::string( e.what() ).find( "(h,1)" ), std::string::npos ) << e.what();
    }
}

TEST( Lattice, FromTablesDiamondMeetIsValid )
{
    const auto L = build_from_tables( diamond_meet() );
    EXPECT_TRUE( L.is_frame() );
    EXPECT_TRUE( verify_axioms( L ).all_pass() );
}

TEST( Lattice, FromTablesRejectsCyclicOrder )
{
    lattice_description d{ { "0", "1" }, { { 0, 1 }, { 1, 0 } }, { { 0, 0 }, { 0, 1 } } };
    try
    {
        build_from_tables( d );
        FAIL() << "expected not-a-lattice";
    }
    catch ( const error& e )
    {
        EXPECT_EQ( e.kind(), error_kind::not_a_lattice );
    }
}

TEST( Lattice, GodelMvWitness )
{
    const auto L = build_chain( 3, chain_flavor::godel );
    EXPECT_FALSE( L.is_mv() );
    const auto rep = verify_axioms( L );
    const auto* mv = rep.find( "MV" );
    ASSERT_NE( mv, nullptr );
    EXPECT_FALSE( mv->holds );
    EXPECT_NE( mv->witness.find( "a=1/2" ), std::string::npos ) << mv->witness;
    EXPECT_NE( mv->witness.find( "b=0" ), std::string::npos ) << mv->witness;
}

TEST( LatticeProperty, BuiltinsPassEveryAxiom )
{
    for ( const auto& L : builtins() )
    {
        const auto rep = verify_axioms( L );
        for ( const auto& a : rep.axioms )
            EXPECT_TRUE( a.holds ) << L.name() << " " << a.name << ": " << a.witness;
    }
}

TEST( LatticeProperty, AdjunctionAndResiduumScan )
{
    for ( const auto& L : builtins() )
        for ( std::size_t a = 0; a < L.size(); ++a )
            for ( std::size_t b = 0; b < L.size(); ++b )
            {
                EXPECT_EQ( L.arrow( lat( a ), lat( b ) ), scan_arrow( L, lat( a ), lat( b ) ) ) << L.name();
                for ( std::size_t c = 0; c < L.size(); ++c )
                    EXPECT_EQ( L.leq( L.star( lat( a ), lat( c ) ), lat( b ) ),
                               L.leq( lat( c ), L.arrow( lat( a ), lat( b ) ) ) );
            }
}

TEST( LatticeProperty, MvFlagMatchesFlavor )
{
    for ( std::size_t n = 2; n <= 6; ++n )
    {
        EXPECT_TRUE( build_chain( n, chain_flavor::lukasiewicz ).is_mv() ) << n;
        EXPECT_EQ( build_chain( n, chain_flavor::godel ).is_mv(), n == 2 ) << n;
    }
}

TEST( LatticeProperty, FrameImpliesCdAndFlagsAreStable )
{
    for ( const auto& L : builtins() )
    {
        if ( L.is_frame() )
            EXPECT_TRUE( L.is_cd() ) << L.name();
        const residuated_lattice again( L.tables(), L.name() );
        EXPECT_EQ( again.is_mv(), L.is_mv() );
        EXPECT_EQ( again.is_cd(), L.is_cd() );
        EXPECT_EQ( again.is_frame(), L.is_frame() );
    }
}

TEST( LatticeProperty, ImplicationTopIffOrder )
{
    for ( const auto& L : builtins() )
        for ( std::size_t a = 0; a < L.size(); ++a )
            for ( std::size_t b = 0; b < L.size(); ++b )
                EXPECT_EQ( L.arrow( lat( a ), lat( b ) ) == L.top(), L.leq( lat( a ), lat( b ) ) );
}
