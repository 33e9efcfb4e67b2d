#pragma once

#include "error.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tconv
{

// Finite group given by its Cayley table over element ids 0..n-1.
class finite_group
{
    std::vector<std::string> _names;
    std::vector<std::size_t> _cayley; // row-major
    std::vector<std::size_t> _inv;
    std::size_t _identity = 0;
    std::string _label;

public:
    finite_group() = default;

    // Throws not_a_group with the violating elements.
    finite_group( std::vector<std::string> names, std::vector<std::size_t> cayley, std::string label = "group" )
            : _names{ std::move( names ) }, _cayley{ std::move( cayley ) }, _label{ std::move( label ) }
    {
        const auto n = _names.size();
        if ( n == 0 || _cayley.size() != n * n )
            throw error( error_kind::not_a_group, "Cayley table must be n*n over a non-empty carrier" );
        for ( auto v : _cayley )
            if ( v >= n )
                throw error( error_kind::not_a_group, "Cayley entry out of range" );
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( mul( mul( a, b ), c ) != mul( a, mul( b, c ) ) )
                        throw error( error_kind::not_a_group, "not associative at (" + _names[ a ] + "," +
                                                                      _names[ b ] + "," + _names[ c ] + ")" );
        std::optional<std::size_t> e;
        for ( std::size_t a = 0; a < n && !e; ++a )
        {
            bool unit = true;
            for ( std::size_t b = 0; b < n; ++b )
                unit = unit && mul( a, b ) == b && mul( b, a ) == b;
            if ( unit )
                e = a;
        }
        if ( !e )
            throw error( error_kind::not_a_group, "no identity element" );
        _identity = *e;
        _inv.assign( n, n );
        for ( std::size_t a = 0; a < n; ++a )
        {
            for ( std::size_t b = 0; b < n; ++b )
                if ( mul( a, b ) == _identity && mul( b, a ) == _identity )
                    _inv[ a ] = b;
            if ( _inv[ a ] == n )
                throw error( error_kind::not_a_group, "no inverse for " + _names[ a ] );
        }
    }

    [[nodiscard]] std::size_t size() const { return _names.size(); }
    [[nodiscard]] std::size_t identity() const { return _identity; }
    [[nodiscard]] std::size_t mul( std::size_t a, std::size_t b ) const { return _cayley[ a * size() + b ]; }
    [[nodiscard]] std::size_t inv( std::size_t a ) const { return _inv[ a ]; }
    [[nodiscard]] const std::string& name( std::size_t a ) const { return _names[ a ]; }
    [[nodiscard]] const std::vector<std::string>& names() const { return _names; }
    [[nodiscard]] const std::vector<std::size_t>& cayley() const { return _cayley; }
    [[nodiscard]] const std::string& label() const { return _label; }

    [[nodiscard]] std::optional<std::size_t> find( std::string_view name ) const
    {
        for ( std::size_t i = 0; i < size(); ++i )
            if ( _names[ i ] == name )
                return i;
        return std::nullopt;
    }

    [[nodiscard]] bool is_abelian() const
    {
        for ( std::size_t a = 0; a < size(); ++a )
            for ( std::size_t b = 0; b < size(); ++b )
                if ( mul( a, b ) != mul( b, a ) )
                    return false;
        return true;
    }

    friend bool operator==( const finite_group& l, const finite_group& r ) { return l._cayley == r._cayley; }
};

inline finite_group cyclic_group( std::size_t n )
{
    if ( n < 1 )
        throw error( error_kind::invalid_parameter, "cyclic group order must be positive" );
    std::vector<std::string> names;
    std::vector<std::size_t> table( n * n );
    for ( std::size_t a = 0; a < n; ++a )
    {
        names.push_back( a == 0 ? "e" : "g" + std::to_string( a ) );
        for ( std::size_t b = 0; b < n; ++b )
            table[ a * n + b ] = ( a + b ) % n;
    }
    if ( n == 2 )
        names[ 1 ] = "a";
    return { std::move( names ), std::move( table ), "Z" + std::to_string( n ) };
}

inline finite_group klein_group()
{
    std::vector<std::size_t> table( 16 );
    for ( std::size_t a = 0; a < 4; ++a )
        for ( std::size_t b = 0; b < 4; ++b )
            table[ a * 4 + b ] = a ^ b;
    return { { "e", "a", "b", "c" }, std::move( table ), "klein" };
}

inline finite_group direct_product( const finite_group& g, const finite_group& h )
{
    const auto n = g.size() * h.size();
    std::vector<std::string> names;
    std::vector<std::size_t> table( n * n );
    for ( std::size_t a = 0; a < g.size(); ++a )
        for ( std::size_t b = 0; b < h.size(); ++b )
            names.push_back( "(" + g.name( a ) + "," + h.name( b ) + ")" );
    for ( std::size_t x = 0; x < n; ++x )
        for ( std::size_t y = 0; y < n; ++y )
            table[ x * n + y ] = g.mul( x / h.size(), y / h.size() ) * h.size() + h.mul( x % h.size(), y % h.size() );
    return { std::move( names ), std::move( table ), g.label() + "x" + h.label() };
}

// Brute-force isomorphism test over all bijections; only for tiny groups.
inline bool isomorphic( const finite_group& g, const finite_group& h )
{
    if ( g.size() != h.size() || g.size() > 8 )
        return false;
    std::vector<std::size_t> perm( g.size() );
    for ( std::size_t i = 0; i < perm.size(); ++i )
        perm[ i ] = i;
    do
    {
        bool ok = true;
        for ( std::size_t a = 0; a < g.size() && ok; ++a )
            for ( std::size_t b = 0; b < g.size() && ok; ++b )
                ok = perm[ g.mul( a, b ) ] == h.mul( perm[ a ], perm[ b ] );
        if ( ok )
            return true;
    } while ( std::next_permutation( perm.begin(), perm.end() ) );
    return false;
}

inline finite_group builtin_group( std::string_view name )
{
    if ( name == "Z1" )
        return cyclic_group( 1 );
    if ( name == "Z2" )
        return cyclic_group( 2 );
    if ( name == "Z3" )
        return cyclic_group( 3 );
    if ( name == "Z4" )
        return cyclic_group( 4 );
    if ( name == "klein" )
        return klein_group();
    throw error( error_kind::unresolved_reference, "unknown builtin group '" + std::string( name ) + "'" );
}

// Total function between finite carriers, given by its table.
struct finite_map
{
    std::size_t source_size = 0;
    std::size_t target_size = 0;
    std::vector<std::size_t> graph;

    finite_map() = default;
    finite_map( std::size_t target, std::vector<std::size_t> table )
            : source_size{ table.size() }, target_size{ target }, graph{ std::move( table ) }
    {
        for ( auto y : graph )
            if ( y >= target_size )
                throw error( error_kind::invalid_parameter, "map value out of range" );
    }

    [[nodiscard]] std::size_t operator()( std::size_t x ) const { return graph[ x ]; }

    [[nodiscard]] bool is_surjective() const
    {
        std::vector<bool> hit( target_size );
        for ( auto y : graph )
            hit[ y ] = true;
        return std::find( hit.begin(), hit.end(), false ) == hit.end();
    }

    [[nodiscard]] bool is_homomorphism( const finite_group& src, const finite_group& dst ) const
    {
        for ( std::size_t a = 0; a < src.size(); ++a )
            for ( std::size_t b = 0; b < src.size(); ++b )
                if ( graph[ src.mul( a, b ) ] != dst.mul( graph[ a ], graph[ b ] ) )
                    return false;
        return true;
    }

    friend bool operator==( const finite_map&, const finite_map& ) = default;
    friend auto operator<=>( const finite_map&, const finite_map& ) = default;
};

inline finite_map identity_map( std::size_t n )
{
    std::vector<std::size_t> g( n );
    for ( std::size_t i = 0; i < n; ++i )
        g[ i ] = i;
    return { n, std::move( g ) };
}

inline finite_map constant_map( std::size_t source, std::size_t target, std::size_t value )
{
    return { target, std::vector<std::size_t>( source, value ) };
}

// g after f
inline finite_map compose( const finite_map& g, const finite_map& f )
{
    if ( f.target_size != g.source_size )
        throw error( error_kind::domain_mismatch, "composition of maps with mismatched carriers" );
    std::vector<std::size_t> out( f.source_size );
    for ( std::size_t x = 0; x < f.source_size; ++x )
        out[ x ] = g( f( x ) );
    return { g.target_size, std::move( out ) };
}

// Product carriers are indexed lexicographically: (i, j) -> i * n2 + j.
inline std::size_t pair_index( std::size_t i, std::size_t j, std::size_t n2 ) { return i * n2 + j; }

inline finite_map projection1( std::size_t n1, std::size_t n2 )
{
    std::vector<std::size_t> g( n1 * n2 );
    for ( std::size_t i = 0; i < n1 * n2; ++i )
        g[ i ] = i / n2;
    return { n1, std::move( g ) };
}

inline finite_map projection2( std::size_t n1, std::size_t n2 )
{
    std::vector<std::size_t> g( n1 * n2 );
    for ( std::size_t i = 0; i < n1 * n2; ++i )
        g[ i ] = i % n2;
    return { n2, std::move( g ) };
}

inline finite_map product_map( const finite_map& f1, const finite_map& f2 )
{
    std::vector<std::size_t> g( f1.source_size * f2.source_size );
    for ( std::size_t a = 0; a < f1.source_size; ++a )
        for ( std::size_t b = 0; b < f2.source_size; ++b )
            g[ pair_index( a, b, f2.source_size ) ] = pair_index( f1( a ), f2( b ), f2.target_size );
    return { f1.target_size * f2.target_size, std::move( g ) };
}

inline finite_map multiplication_map( const finite_group& g )
{
    std::vector<std::size_t> out( g.size() * g.size() );
    for ( std::size_t a = 0; a < g.size(); ++a )
        for ( std::size_t b = 0; b < g.size(); ++b )
            out[ pair_index( a, b, g.size() ) ] = g.mul( a, b );
    return { g.size(), std::move( out ) };
}

inline finite_map inversion_map( const finite_group& g )
{
    std::vector<std::size_t> out( g.size() );
    for ( std::size_t a = 0; a < g.size(); ++a )
        out[ a ] = g.inv( a );
    return { g.size(), std::move( out ) };
}

// All |Y|^|X| maps in lexicographic order of their tables.
inline std::vector<finite_map> all_maps( std::size_t source, std::size_t target, std::size_t budget )
{
    std::size_t count = 1;
    for ( std::size_t i = 0; i < source; ++i )
    {
        count *= target;
        if ( count > budget )
            throw error( error_kind::budget_exceeded, "map enumeration exceeds budget" );
    }
    std::vector<finite_map> out;
    std::vector<std::size_t> g( source, 0 );
    for ( std::size_t k = 0; k < count; ++k )
    {
        out.emplace_back( target, g );
        for ( std::size_t i = source; i-- > 0; )
        {
            if ( ++g[ i ] < target )
                break;
            g[ i ] = 0;
        }
    }
    return out;
}

} // namespace tconv
