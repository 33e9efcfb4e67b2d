#include <tconv/power.hpp>

#include <gtest/gtest.h>

using namespace tconv;

namespace
{

std::shared_ptr<const convergence_structure> discrete( residuated_lattice L, finite_group G )
{
    auto l = std::make_shared<const residuated_lattice>( std::move( L ) );
    auto g = std::make_shared<const finite_group>( std::move( G ) );
    return std::make_shared<const convergence_structure>(
            discrete_structure( complete_universe( l, g->size(), 20000 ), g ) );
}

const check_result& find( const std::vector<named_check>& checks, const std::string& name )
{
    for ( const auto& c : checks )
        if ( c.name == name )
            return c.result;
    throw std::runtime_error( "no check " + name );
}

} // namespace

TEST( Power, CdLemmaOnBooleanAndChain )
{
    for ( const auto& L : { build_boolean( 1 ), build_chain( 3, chain_flavor::lukasiewicz ) } )
    {
        const auto filters = enumerate_filters( L, 2, 20000 );
        const auto maps = all_maps( 2, 2, 10 );
        for ( const auto& f1 : maps )
            for ( const auto& f2 : maps )
                for ( const auto& F1 : filters )
                    for ( const auto& F2 : filters )
                        EXPECT_TRUE( lemma_cd_check( L, f1, f2, F1, F2 ).holds );
    }
}

TEST( Power, Z2DiscreteMapSpace )
{
    const auto C = discrete( build_boolean( 1 ), cyclic_group( 2 ) );
    const auto S = build_power( C, C, 20000, 4 );
    ASSERT_EQ( S.maps.size(), 4u );
    std::size_t brute = 0;
    for ( const auto& f : all_maps( 2, 2, 10 ) )
        brute += continuous( f, *C, *C ).holds;
    EXPECT_EQ( brute, 4u );
    ASSERT_TRUE( S.group );
    EXPECT_TRUE( isomorphic( *S.group, klein_group() ) );
    const auto e = *S.index_of( constant_map( 2, 2, 0 ) );
    EXPECT_EQ( S.group->identity(), e );
    for ( std::size_t f = 0; f < 4; ++f )
    {
        EXPECT_EQ( S.group->mul( f, e ), f );
        EXPECT_EQ( S.maps[ S.group->inv( f ) ], compose( inversion_map( *C->group() ), S.maps[ f ] ) );
        EXPECT_TRUE( S.structure->converges( S.map_universe->point( f ), f ) );
    }
    const auto checks = check_power_group( S );
    for ( const auto& c : checks )
        EXPECT_TRUE( c.result.holds ) << c.name << ": " << c.result.witness;
    EXPECT_TRUE( find( checks, "power-TCG" ).relative );
    EXPECT_TRUE( ev_continuity_check( S ).holds );
    EXPECT_TRUE( square_decomposition_check( S ).holds );
    EXPECT_TRUE( ev_homomorphism_failure( S ).has_value() );
}

TEST( Power, TransposeUniqueness )
{
    const auto C = discrete( build_boolean( 1 ), cyclic_group( 2 ) );
    const auto S = build_power( C, C, 20000, 4 );
    const auto rep = transpose_check( multiplication_map( *C->group() ), *C, S, 20000 );
    EXPECT_EQ( rep.scanned, 16u );
    EXPECT_EQ( rep.satisfying, 1u );
    for ( const auto& c : rep.checks )
        EXPECT_TRUE( c.result.holds ) << c.name << ": " << c.result.witness;
    const auto proj = transpose_check( projection1( 2, 2 ), *C, S, 20000 );
    EXPECT_EQ( proj.satisfying, 1u );
    EXPECT_TRUE( box_converse_check( *C, S, 20000 ).holds );
}

TEST( Power, DiscontinuousPhiIsRejected )
{
    const auto C = discrete( build_boolean( 1 ), cyclic_group( 2 ) );
    auto l = std::make_shared<const residuated_lattice>( build_boolean( 1 ) );
    auto g = std::make_shared<const finite_group>( cyclic_group( 2 ) );
    const auto ids = indiscrete_structure( complete_universe( l, 2, 20000 ), g );
    const auto S = build_power( C, C, 20000, 4 );
    EXPECT_THROW( transpose_check( projection1( 2, 2 ), ids, S, 20000 ), error );
    try
    {
        transpose_check( multiplication_map( *g ), ids, S, 20000 );
        FAIL();
    }
    catch ( const error& e )
    {
        EXPECT_EQ( e.kind(), error_kind::not_continuous );
    }
}

TEST( Power, NonCdLatticeIsRefused )
{
    lattice_description d{ { "0", "a", "b", "c", "1" },
                           { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 4 }, { 2, 4 }, { 3, 4 } },
                           { { 0, 0, 0, 0, 0 }, { 0, 1, 0, 0, 1 }, { 0, 0, 2, 0, 2 }, { 0, 0, 0, 3, 3 }, { 0, 1, 2, 3, 4 } } };
    const auto L = build_unchecked( d );
    EXPECT_FALSE( L.is_cd() );
    const auto C = discrete( L, cyclic_group( 2 ) );
    EXPECT_THROW( build_power( C, C, 20000, 4 ), error );
}

TEST( Power, IndiscreteTargetAcceptsEveryMap )
{
    auto l = std::make_shared<const residuated_lattice>( build_chain( 3, chain_flavor::godel ) );
    auto g = std::make_shared<const finite_group>( cyclic_group( 2 ) );
    const auto U = complete_universe( l, 2, 20000 );
    const auto ds = std::make_shared<const convergence_structure>( discrete_structure( U, g ) );
    const auto ids = std::make_shared<const convergence_structure>( indiscrete_structure( U, g ) );
    const auto S = build_power( ds, ids, 20000, 4 );
    EXPECT_EQ( S.maps.size(), 4u );
    for ( const auto& c : check_power_group( S ) )
        EXPECT_TRUE( c.result.holds ) << c.name << ": " << c.result.witness;
    EXPECT_TRUE( ev_continuity_check( S ).holds );
}
