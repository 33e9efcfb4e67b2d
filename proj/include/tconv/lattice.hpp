#pragma once

#include "error.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tconv
{

// Lattice elements are dense ids into the tables; labels are display only.
using lat = std::uint8_t;

enum class chain_flavor
{
    lukasiewicz,
    godel,
};

struct lattice_tables
{
    std::vector<std::string> labels;
    std::vector<std::uint8_t> leq; // row-major n*n, leq[a*n+b] iff a <= b
    std::vector<lat> join;
    std::vector<lat> meet;
    std::vector<lat> star;
    std::vector<lat> arrow;
    lat top = 0;
    lat bot = 0;
};

class residuated_lattice
{
    lattice_tables _t;
    std::size_t _n;
    std::string _name;
    bool _mv = false;
    bool _cd = false;
    bool _frame = false;

    [[nodiscard]] std::size_t at( lat a, lat b ) const { return std::size_t( a ) * _n + b; }

    void compute_flags()
    {
        _mv = true;
        _frame = true;
        for ( std::size_t a = 0; a < _n; ++a )
            for ( std::size_t b = 0; b < _n; ++b )
            {
                const auto x = lat( a ), y = lat( b );
                if ( join( x, y ) != arrow( arrow( x, y ), y ) )
                    _mv = false;
                if ( star( x, y ) != meet( x, y ) )
                    _frame = false;
            }
        _cd = cd_witness().empty();
    }

public:
    // Takes the tables as given. Use the build_* functions for validated
    // construction; this constructor only computes the law flags.
    residuated_lattice( lattice_tables tables, std::string name )
            : _t{ std::move( tables ) }, _n{ _t.labels.size() }, _name{ std::move( name ) }
    {
        compute_flags();
    }

    [[nodiscard]] std::size_t size() const { return _n; }
    [[nodiscard]] const std::string& name() const { return _name; }
    [[nodiscard]] lat top() const { return _t.top; }
    [[nodiscard]] lat bot() const { return _t.bot; }
    [[nodiscard]] bool leq( lat a, lat b ) const { return _t.leq[ at( a, b ) ] != 0; }
    [[nodiscard]] lat join( lat a, lat b ) const { return _t.join[ at( a, b ) ]; }
    [[nodiscard]] lat meet( lat a, lat b ) const { return _t.meet[ at( a, b ) ]; }
    [[nodiscard]] lat star( lat a, lat b ) const { return _t.star[ at( a, b ) ]; }
    [[nodiscard]] lat arrow( lat a, lat b ) const { return _t.arrow[ at( a, b ) ]; }
    [[nodiscard]] const std::string& label( lat a ) const { return _t.labels[ a ]; }
    [[nodiscard]] const lattice_tables& tables() const { return _t; }

    [[nodiscard]] std::optional<lat> find( std::string_view label ) const
    {
        for ( std::size_t i = 0; i < _n; ++i )
            if ( _t.labels[ i ] == label )
                return lat( i );
        return std::nullopt;
    }

    [[nodiscard]] lat join_all( std::span<const lat> xs ) const
    {
        lat acc = bot();
        for ( lat x : xs )
            acc = join( acc, x );
        return acc;
    }

    [[nodiscard]] lat meet_all( std::span<const lat> xs ) const
    {
        lat acc = top();
        for ( lat x : xs )
            acc = meet( acc, x );
        return acc;
    }

    [[nodiscard]] bool is_mv() const { return _mv; }
    [[nodiscard]] bool is_cd() const { return _cd; }
    [[nodiscard]] bool is_frame() const { return _frame; }

    // Empty when meets distribute over every join of a subset of the carrier,
    // otherwise a description of the first failing (a, S).
    [[nodiscard]] std::string cd_witness() const
    {
        if ( _n > 16 )
        {
            // Binary distributivity is equivalent on a finite lattice.
            for ( std::size_t a = 0; a < _n; ++a )
                for ( std::size_t b = 0; b < _n; ++b )
                    for ( std::size_t c = 0; c < _n; ++c )
                    {
                        const auto x = lat( a ), y = lat( b ), z = lat( c );
                        if ( meet( x, join( y, z ) ) != join( meet( x, y ), meet( x, z ) ) )
                            return "a=" + label( x ) + " S={" + label( y ) + "," + label( z ) + "}";
                    }
            return {};
        }
        for ( std::size_t a = 0; a < _n; ++a )
            for ( std::uint32_t mask = 0; mask < ( 1u << _n ); ++mask )
            {
                lat sup = bot(), lhs_sup = bot();
                for ( std::size_t s = 0; s < _n; ++s )
                    if ( mask & ( 1u << s ) )
                    {
                        sup = join( sup, lat( s ) );
                        lhs_sup = join( lhs_sup, meet( lat( a ), lat( s ) ) );
                    }
                if ( meet( lat( a ), sup ) != lhs_sup )
                {
                    std::string set;
                    for ( std::size_t s = 0; s < _n; ++s )
                        if ( mask & ( 1u << s ) )
                            set += ( set.empty() ? "" : "," ) + label( lat( s ) );
                    return "a=" + label( lat( a ) ) + " S={" + set + "}";
                }
            }
        return {};
    }

    friend bool operator==( const residuated_lattice& l, const residuated_lattice& r )
    {
        return l._t.leq == r._t.leq && l._t.star == r._t.star && l._t.top == r._t.top &&
               l._t.bot == r._t.bot;
    }
};

namespace detail
{

inline std::string fraction_label( std::size_t k, std::size_t den )
{
    if ( k == 0 )
        return "0";
    if ( k == den )
        return "1";
    const auto g = std::gcd( k, den );
    return std::to_string( k / g ) + "/" + std::to_string( den / g );
}

// Residuum by its defining join: a -> b = join { c | a*c <= b }.
inline std::vector<lat> derive_arrow( std::size_t n, const std::vector<std::uint8_t>& leq,
                                      const std::vector<lat>& join, const std::vector<lat>& star, lat bot )
{
    std::vector<lat> arrow( n * n );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            lat acc = bot;
            for ( std::size_t c = 0; c < n; ++c )
                if ( leq[ star[ a * n + c ] * n + b ] )
                    acc = join[ acc * n + c ];
            arrow[ a * n + b ] = acc;
        }
    return arrow;
}

// Fills join/meet/top/bot from a partial order; throws not_a_lattice.
inline void derive_bounds( lattice_tables& t )
{
    const auto n = t.labels.size();
    auto le = [ & ]( std::size_t a, std::size_t b ) { return t.leq[ a * n + b ] != 0; };
    t.join.assign( n * n, 0 );
    t.meet.assign( n * n, 0 );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            std::optional<std::size_t> lub, glb;
            for ( std::size_t c = 0; c < n; ++c )
            {
                if ( le( a, c ) && le( b, c ) && ( !lub || le( c, *lub ) ) )
                    lub = c;
                if ( le( c, a ) && le( c, b ) && ( !glb || le( *glb, c ) ) )
                    glb = c;
            }
            // The scan keeps the last minimal candidate; it is the least upper
            // bound only if it lies below every upper bound.
            for ( std::size_t c = 0; c < n; ++c )
            {
                if ( lub && le( a, c ) && le( b, c ) && !le( *lub, c ) )
                    lub.reset();
                if ( glb && le( c, a ) && le( c, b ) && !le( c, *glb ) )
                    glb.reset();
            }
            if ( !lub || !glb )
                throw error( error_kind::not_a_lattice, "pair (" + t.labels[ a ] + "," + t.labels[ b ] +
                                                                ") has no " + ( lub ? "meet" : "join" ) );
            t.join[ a * n + b ] = lat( *lub );
            t.meet[ a * n + b ] = lat( *glb );
        }
    std::optional<std::size_t> top, bot;
    for ( std::size_t c = 0; c < n; ++c )
    {
        bool is_top = true, is_bot = true;
        for ( std::size_t d = 0; d < n; ++d )
        {
            is_top = is_top && le( d, c );
            is_bot = is_bot && le( c, d );
        }
        if ( is_top )
            top = c;
        if ( is_bot )
            bot = c;
    }
    if ( !top || !bot )
        throw error( error_kind::not_a_lattice, "no global top/bottom" );
    t.top = lat( *top );
    t.bot = lat( *bot );
}

} // namespace detail

inline residuated_lattice build_chain( std::size_t n, chain_flavor flavor )
{
    if ( n < 2 || n > 64 )
        throw error( error_kind::invalid_parameter, "chain length must be in [2, 64], got " + std::to_string( n ) );
    lattice_tables t;
    const auto den = n - 1;
    for ( std::size_t i = 0; i < n; ++i )
        t.labels.push_back( detail::fraction_label( i, den ) );
    t.leq.assign( n * n, 0 );
    t.join.assign( n * n, 0 );
    t.meet.assign( n * n, 0 );
    t.star.assign( n * n, 0 );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            t.leq[ a * n + b ] = a <= b;
            t.join[ a * n + b ] = lat( std::max( a, b ) );
            t.meet[ a * n + b ] = lat( std::min( a, b ) );
            t.star[ a * n + b ] = flavor == chain_flavor::godel ? lat( std::min( a, b ) )
                                                                : lat( a + b > den ? a + b - den : 0 );
        }
    t.bot = 0;
    t.top = lat( den );
    t.arrow = detail::derive_arrow( n, t.leq, t.join, t.star, t.bot );
    return { std::move( t ), "chain(" + std::to_string( n ) + "," +
                                     ( flavor == chain_flavor::godel ? "godel" : "lukasiewicz" ) + ")" };
}

inline residuated_lattice build_boolean( std::size_t k )
{
    if ( k < 1 || k > 6 )
        throw error( error_kind::invalid_parameter, "boolean rank must be in [1, 6], got " + std::to_string( k ) );
    const std::size_t n = std::size_t( 1 ) << k;
    lattice_tables t;
    for ( std::size_t m = 0; m < n; ++m )
    {
        if ( k == 1 )
        {
            t.labels.push_back( m ? "1" : "0" );
            continue;
        }
        std::string s = "{";
        for ( std::size_t i = 0; i < k; ++i )
            if ( m & ( std::size_t( 1 ) << i ) )
                s += ( s.size() > 1 ? "," : "" ) + std::to_string( i + 1 );
        t.labels.push_back( s + "}" );
    }
    t.leq.assign( n * n, 0 );
    t.join.assign( n * n, 0 );
    t.meet.assign( n * n, 0 );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            t.leq[ a * n + b ] = ( a & b ) == a;
            t.join[ a * n + b ] = lat( a | b );
            t.meet[ a * n + b ] = lat( a & b );
        }
    t.star = t.meet;
    t.bot = 0;
    t.top = lat( n - 1 );
    t.arrow = detail::derive_arrow( n, t.leq, t.join, t.star, t.bot );
    return { std::move( t ), "boolean(" + std::to_string( k ) + ")" };
}

// Raw lattice description as read from a model file.
struct lattice_description
{
    std::vector<std::string> carrier;
    std::vector<std::pair<lat, lat>> leq_pairs; // generating pairs a <= b
    std::vector<std::vector<lat>> star_rows;    // star_rows[a][b] = a*b
};

// Order, bounds and star exactly as given; the star axioms are not checked.
inline residuated_lattice build_unchecked( const lattice_description& doc, std::string name = "tables" )
{
    const auto n = doc.carrier.size();
    if ( n < 1 || n > 64 )
        throw error( error_kind::invalid_parameter, "carrier size must be in [1, 64]" );
    if ( doc.star_rows.size() != n )
        throw error( error_kind::invalid_parameter, "star table needs one row per element" );
    for ( const auto& row : doc.star_rows )
        if ( row.size() != n )
            throw error( error_kind::invalid_parameter, "star table row of wrong length" );

    lattice_tables t;
    t.labels = doc.carrier;
    t.leq.assign( n * n, 0 );
    for ( std::size_t a = 0; a < n; ++a )
        t.leq[ a * n + a ] = 1;
    for ( auto [ a, b ] : doc.leq_pairs )
    {
        if ( a >= n || b >= n )
            throw error( error_kind::invalid_parameter, "leq pair out of range" );
        t.leq[ a * n + b ] = 1;
    }
    for ( std::size_t k = 0; k < n; ++k ) // transitive closure
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                if ( t.leq[ a * n + k ] && t.leq[ k * n + b ] )
                    t.leq[ a * n + b ] = 1;
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = a + 1; b < n; ++b )
            if ( t.leq[ a * n + b ] && t.leq[ b * n + a ] )
                throw error( error_kind::not_a_lattice,
                             "order is not antisymmetric at (" + t.labels[ a ] + "," + t.labels[ b ] + ")" );
    detail::derive_bounds( t );

    t.star.assign( n * n, 0 );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( doc.star_rows[ a ][ b ] >= n )
                throw error( error_kind::invalid_parameter, "star entry out of range" );
            t.star[ a * n + b ] = doc.star_rows[ a ][ b ];
        }

    t.arrow = detail::derive_arrow( n, t.leq, t.join, t.star, t.bot );
    return { std::move( t ), std::move( name ) };
}

inline residuated_lattice build_from_tables( const lattice_description& doc, std::string name = "tables" )
{
    auto L = build_unchecked( doc, std::move( name ) );
    const auto n = L.size();
    const auto& t = L.tables();
    auto s = [ & ]( std::size_t a, std::size_t b ) { return t.star[ a * n + b ]; };
    auto j = [ & ]( std::size_t a, std::size_t b ) { return t.join[ a * n + b ]; };
    auto lbl = [ & ]( std::size_t a ) { return t.labels[ a ]; };
    for ( std::size_t a = 0; a < n; ++a )
        if ( s( a, t.top ) != a )
            throw error( error_kind::no_unit, "a*top != a at a=" + lbl( a ) );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( s( a, b ) != s( b, a ) )
                throw error( error_kind::star_axiom_violation,
                             "not commutative at (" + lbl( a ) + "," + lbl( b ) + ")" );
            for ( std::size_t c = 0; c < n; ++c )
                if ( s( s( a, b ), c ) != s( a, s( b, c ) ) )
                    throw error( error_kind::star_axiom_violation,
                                 "not associative at (" + lbl( a ) + "," + lbl( b ) + "," + lbl( c ) + ")" );
        }
    for ( std::size_t a = 0; a < n; ++a )
    {
        if ( s( a, t.bot ) != t.bot )
            throw error( error_kind::distributivity_violation, "a*bot != bot at a=" + lbl( a ) );
        for ( std::size_t b = 0; b < n; ++b )
            for ( std::size_t c = 0; c < n; ++c )
                if ( s( a, j( b, c ) ) != j( s( a, b ), s( a, c ) ) )
                    throw error( error_kind::distributivity_violation,
                                 "a*(b v c) != a*b v a*c at (" + lbl( a ) + "," + lbl( b ) + "," + lbl( c ) + ")" );
    }
    return L;
}

struct law_check
{
    std::string name;
    bool holds = true;
    std::string witness;
};

struct lattice_report
{
    std::vector<law_check> axioms; // must all hold
    std::vector<law_check> flags;  // informational: MV, CD, frame

    [[nodiscard]] bool all_pass() const
    {
        for ( const auto& a : axioms )
            if ( !a.holds )
                return false;
        return true;
    }

    [[nodiscard]] const law_check* find( std::string_view name ) const
    {
        for ( const auto* list : { &axioms, &flags } )
            for ( const auto& a : *list )
                if ( a.name == name )
                    return &a;
        return nullptr;
    }
};

// Exhaustive check of the residuated-lattice axioms and I1-I5 on the tables
// as stored, without trusting how they were built.
inline lattice_report verify_axioms( const residuated_lattice& L )
{
    const auto n = L.size();
    lattice_report rep;
    auto lbl = [ & ]( std::size_t a ) { return L.label( lat( a ) ); };
    auto w2 = [ & ]( std::size_t a, std::size_t b ) { return "a=" + lbl( a ) + " b=" + lbl( b ); };
    auto w3 = [ & ]( std::size_t a, std::size_t b, std::size_t c ) { return w2( a, b ) + " c=" + lbl( c ); };

    auto check = [ &rep ]( std::string name, auto&& body ) {
        law_check c{ std::move( name ) };
        c.witness = body();
        c.holds = c.witness.empty();
        rep.axioms.push_back( std::move( c ) );
    };

    check( "partial-order", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
        {
            if ( !L.leq( lat( a ), lat( a ) ) )
                return "not reflexive at a=" + lbl( a );
            for ( std::size_t b = 0; b < n; ++b )
            {
                if ( a != b && L.leq( lat( a ), lat( b ) ) && L.leq( lat( b ), lat( a ) ) )
                    return "not antisymmetric at " + w2( a, b );
                for ( std::size_t c = 0; c < n; ++c )
                    if ( L.leq( lat( a ), lat( b ) ) && L.leq( lat( b ), lat( c ) ) && !L.leq( lat( a ), lat( c ) ) )
                        return "not transitive at " + w3( a, b, c );
            }
        }
        return {};
    } );
    check( "join-meet-bounds", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
        {
            if ( !L.leq( L.bot(), lat( a ) ) || !L.leq( lat( a ), L.top() ) )
                return "bounds fail at a=" + lbl( a );
            for ( std::size_t b = 0; b < n; ++b )
            {
                const lat j = L.join( lat( a ), lat( b ) ), m = L.meet( lat( a ), lat( b ) );
                if ( !L.leq( lat( a ), j ) || !L.leq( lat( b ), j ) || !L.leq( m, lat( a ) ) || !L.leq( m, lat( b ) ) )
                    return "join/meet not a bound at " + w2( a, b );
                for ( std::size_t c = 0; c < n; ++c )
                {
                    if ( L.leq( lat( a ), lat( c ) ) && L.leq( lat( b ), lat( c ) ) && !L.leq( j, lat( c ) ) )
                        return "join not least at " + w3( a, b, c );
                    if ( L.leq( lat( c ), lat( a ) ) && L.leq( lat( c ), lat( b ) ) && !L.leq( lat( c ), m ) )
                        return "meet not greatest at " + w3( a, b, c );
                }
            }
        }
        return {};
    } );
    check( "star-commutative", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                if ( L.star( lat( a ), lat( b ) ) != L.star( lat( b ), lat( a ) ) )
                    return w2( a, b );
        return {};
    } );
    check( "star-associative", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( L.star( L.star( lat( a ), lat( b ) ), lat( c ) ) !=
                         L.star( lat( a ), L.star( lat( b ), lat( c ) ) ) )
                        return w3( a, b, c );
        return {};
    } );
    check( "star-unit", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            if ( L.star( lat( a ), L.top() ) != lat( a ) )
                return "a=" + lbl( a );
        return {};
    } );
    check( "star-distributes-over-joins", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
        {
            if ( L.star( lat( a ), L.bot() ) != L.bot() )
                return "a*bot != bot at a=" + lbl( a );
            for ( std::size_t b = 0; b < n; ++b )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( L.star( lat( a ), L.join( lat( b ), lat( c ) ) ) !=
                         L.join( L.star( lat( a ), lat( b ) ), L.star( lat( a ), lat( c ) ) ) )
                        return w3( a, b, c );
        }
        return {};
    } );
    check( "residuum-definition", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
            {
                lat acc = L.bot();
                for ( std::size_t c = 0; c < n; ++c )
                    if ( L.leq( L.star( lat( a ), lat( c ) ), lat( b ) ) )
                        acc = L.join( acc, lat( c ) );
                if ( acc != L.arrow( lat( a ), lat( b ) ) )
                    return w2( a, b );
            }
        return {};
    } );
    check( "adjunction", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( L.leq( L.star( lat( a ), lat( c ) ), lat( b ) ) !=
                         L.leq( lat( c ), L.arrow( lat( a ), lat( b ) ) ) )
                        return w3( a, b, c );
        return {};
    } );
    check( "I1", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                if ( ( L.arrow( lat( a ), lat( b ) ) == L.top() ) != L.leq( lat( a ), lat( b ) ) )
                    return w2( a, b );
        return {};
    } );
    check( "I2", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                if ( !L.leq( L.star( lat( a ), L.arrow( lat( a ), lat( b ) ) ), lat( b ) ) )
                    return w2( a, b );
        return {};
    } );
    check( "I3", [ & ]() -> std::string {
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( L.arrow( lat( a ), L.arrow( lat( b ), lat( c ) ) ) !=
                         L.arrow( L.star( lat( a ), lat( b ) ), lat( c ) ) )
                        return w3( a, b, c );
        return {};
    } );
    // I4/I5 quantify over every subset of the carrier, including the empty one.
    const bool subsets = n <= 16;
    check( "I4", [ & ]() -> std::string {
        if ( !subsets )
            return {};
        for ( std::uint32_t mask = 0; mask < ( 1u << n ); ++mask )
            for ( std::size_t b = 0; b < n; ++b )
            {
                lat sup = L.bot(), inf = L.top();
                for ( std::size_t j = 0; j < n; ++j )
                    if ( mask & ( 1u << j ) )
                    {
                        sup = L.join( sup, lat( j ) );
                        inf = L.meet( inf, L.arrow( lat( j ), lat( b ) ) );
                    }
                if ( L.arrow( sup, lat( b ) ) != inf )
                    return "subset mask=" + std::to_string( mask ) + " b=" + lbl( b );
            }
        return {};
    } );
    check( "I5", [ & ]() -> std::string {
        if ( !subsets )
            return {};
        for ( std::uint32_t mask = 0; mask < ( 1u << n ); ++mask )
            for ( std::size_t a = 0; a < n; ++a )
            {
                lat inf_b = L.top(), inf = L.top();
                for ( std::size_t j = 0; j < n; ++j )
                    if ( mask & ( 1u << j ) )
                    {
                        inf_b = L.meet( inf_b, lat( j ) );
                        inf = L.meet( inf, L.arrow( lat( a ), lat( j ) ) );
                    }
                if ( L.arrow( lat( a ), inf_b ) != inf )
                    return "a=" + lbl( a ) + " subset mask=" + std::to_string( mask );
            }
        return {};
    } );

    law_check mv{ "MV" };
    for ( std::size_t a = 0; a < n && mv.holds; ++a )
        for ( std::size_t b = 0; b < n && mv.holds; ++b )
            if ( L.join( lat( a ), lat( b ) ) != L.arrow( L.arrow( lat( a ), lat( b ) ), lat( b ) ) )
            {
                mv.holds = false;
                mv.witness = w2( a, b );
            }
    law_check cd{ "CD" };
    cd.witness = L.cd_witness();
    cd.holds = cd.witness.empty();
    law_check frame{ "frame" };
    for ( std::size_t a = 0; a < n && frame.holds; ++a )
        for ( std::size_t b = 0; b < n && frame.holds; ++b )
            if ( L.star( lat( a ), lat( b ) ) != L.meet( lat( a ), lat( b ) ) )
            {
                frame.holds = false;
                frame.witness = w2( a, b );
            }
    rep.flags = { mv, cd, frame };
    check( "frame-implies-cd", [ & ]() -> std::string {
        return frame.holds && !cd.holds ? "frame but not CD: " + cd.witness : std::string{};
    } );
    check( "flags-consistent", [ & ]() -> std::string {
        if ( mv.holds != L.is_mv() || cd.holds != L.is_cd() || frame.holds != L.is_frame() )
            return "cached flags disagree with recomputation";
        return {};
    } );
    return rep;
}

} // namespace tconv
