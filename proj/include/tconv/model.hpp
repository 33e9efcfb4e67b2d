#pragma once

#include "convergence.hpp"
#include "report.hpp"
#include "uniform.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tconv
{

// Position in the model text; ignored by equality so that a re-emitted
// document compares equal to the original.
struct source_pos
{
    std::size_t line = 0;
    std::size_t column = 0;

    friend bool operator==( const source_pos&, const source_pos& ) { return true; }
};

struct token
{
    std::string text;
    source_pos pos;

    friend bool operator==( const token& a, const token& b ) { return a.text == b.text; }
};

using token_list = std::vector<token>;

class diagnostic : public error
{
    source_pos _pos;

public:
    diagnostic( error_kind kind, source_pos pos, const std::string& what )
            : error( kind, "line " + std::to_string( pos.line ) + ", column " + std::to_string( pos.column ) + ": " +
                                   what ),
              _pos{ pos }
    {
    }

    [[nodiscard]] std::size_t line() const { return _pos.line; }
    [[nodiscard]] std::size_t column() const { return _pos.column; }
};

struct lattice_block
{
    token_list builtin; // e.g. chain 3 lukasiewicz
    token_list carrier;
    std::vector<std::pair<token, token>> leq;
    std::vector<std::pair<token, token_list>> star_rows;
    bool present = false;

    friend bool operator==( const lattice_block&, const lattice_block& ) = default;
};

struct group_block
{
    token builtin;
    token_list elements;
    std::vector<std::pair<token, token_list>> rows;
    bool present = false;

    friend bool operator==( const group_block&, const group_block& ) = default;
};

struct filter_decl
{
    token name;
    bool pair = false; // on X x X
    std::vector<token_list> members;

    friend bool operator==( const filter_decl&, const filter_decl& ) = default;
};

struct convergence_block
{
    token builtin; // discrete, indiscrete or empty
    token closure; // explicit (default) or upward
    std::vector<std::pair<token, token>> converges, drop, add;
    bool present = false;

    friend bool operator==( const convergence_block&, const convergence_block& ) = default;
};

struct uniform_block
{
    token builtin; // from-group or empty
    token_list members, upsets;
    bool present = false;

    friend bool operator==( const uniform_block&, const uniform_block& ) = default;
};

struct model_document
{
    lattice_block lattice;
    group_block group;
    std::vector<filter_decl> filters;
    convergence_block convergence;
    uniform_block uniform;
    token_list suites;

    friend bool operator==( const model_document&, const model_document& ) = default;
};

inline const std::vector<std::string>& suite_catalogue()
{
    static const std::vector<std::string> names{
            "lattice-axioms", "fuzzy-lemmas", "filter-products", "characterization", "localization", "classification",
            "uniform",        "uniformization", "cd-lemma",      "power",            "all-theorems" };
    return names;
}

namespace detail
{

inline token_list split_tokens( std::string_view text, std::size_t line, std::size_t first_column )
{
    token_list out;
    std::size_t i = 0;
    while ( i < text.size() )
    {
        while ( i < text.size() && ( text[ i ] == ' ' || text[ i ] == '\t' ) )
            ++i;
        const auto start = i;
        while ( i < text.size() && text[ i ] != ' ' && text[ i ] != '\t' )
            ++i;
        if ( i > start )
            out.push_back( { std::string( text.substr( start, i - start ) ), { line, first_column + start } } );
    }
    return out;
}

inline std::string join_tokens( const token_list& ts, std::string_view sep = " " )
{
    std::string s;
    for ( std::size_t i = 0; i < ts.size(); ++i )
        s += ( i ? std::string( sep ) : "" ) + ts[ i ].text;
    return s;
}

// Value split into ';'-separated groups of tokens.
inline std::vector<token_list> split_groups( const token_list& ts, source_pos where )
{
    std::vector<token_list> out( 1 );
    for ( const auto& t : ts )
    {
        if ( t.text == ";" )
        {
            if ( out.back().empty() )
                throw diagnostic( error_kind::syntax_error, t.pos, "empty base member" );
            out.emplace_back();
        }
        else
            out.back().push_back( t );
    }
    if ( out.back().empty() )
        throw diagnostic( error_kind::syntax_error, where, "empty base member" );
    return out;
}

inline std::pair<token, token> expect_pair( const token_list& v, source_pos where, std::string_view what )
{
    if ( v.size() != 2 )
        throw diagnostic( error_kind::syntax_error, v.empty() ? where : v.front().pos,
                          "expected " + std::string( what ) );
    return { v[ 0 ], v[ 1 ] };
}

inline std::size_t parse_count( const token& t )
{
    std::size_t v = 0;
    if ( t.text.empty() || t.text.size() > 3 )
        throw diagnostic( error_kind::syntax_error, t.pos, "expected a small integer, got '" + t.text + "'" );
    for ( char c : t.text )
    {
        if ( c < '0' || c > '9' )
            throw diagnostic( error_kind::syntax_error, t.pos, "expected a small integer, got '" + t.text + "'" );
        v = v * 10 + std::size_t( c - '0' );
    }
    return v;
}

} // namespace detail

// Syntax only; see check_document for references and dimensions.
inline model_document parse_syntax( std::string_view text )
{
    model_document doc;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
        const auto nl = text.find( '\n', pos );
        std::string_view raw = text.substr( pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos );
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
            raw = raw.substr( 0, hash );
        if ( !raw.empty() && raw.back() == '\r' )
            raw.remove_suffix( 1 );
        const auto first = raw.find_first_not_of( " \t" );
        if ( first == std::string_view::npos )
            continue;
        const auto last = raw.find_last_not_of( " \t" );
        const source_pos at{ line_no, first + 1 };

        if ( raw[ first ] == '[' )
        {
            if ( raw[ last ] != ']' )
                throw diagnostic( error_kind::syntax_error, { line_no, last + 1 }, "section header must end with ']'" );
            section = std::string( raw.substr( first + 1, last - first - 1 ) );
            if ( section == "lattice" )
                doc.lattice.present = true;
            else if ( section == "group" )
                doc.group.present = true;
            else if ( section == "convergence" )
                doc.convergence.present = true;
            else if ( section == "uniform" )
                doc.uniform.present = true;
            else if ( section != "filters" && section != "suites" )
                throw diagnostic( error_kind::syntax_error, { line_no, first + 2 }, "unknown section '" + section + "'" );
            continue;
        }
        if ( section.empty() )
            throw diagnostic( error_kind::syntax_error, at, "entry before any section header" );
        const auto eq = raw.find( '=' );
        if ( eq == std::string_view::npos )
            throw diagnostic( error_kind::syntax_error, at, "expected 'key = value'" );
        auto key = detail::split_tokens( raw.substr( 0, eq ), line_no, 1 );
        auto value = detail::split_tokens( raw.substr( eq + 1 ), line_no, eq + 2 );
        if ( key.empty() )
            throw diagnostic( error_kind::syntax_error, at, "missing key" );
        if ( value.empty() )
            throw diagnostic( error_kind::syntax_error, { line_no, eq + 1 }, "missing value" );
        const auto& k = key[ 0 ].text;
        auto bad_key = [ & ] {
            return diagnostic( error_kind::syntax_error, key[ 0 ].pos,
                               "unknown key '" + detail::join_tokens( key ) + "' in [" + section + "]" );
        };
        auto single = [ & ]() -> token {
            if ( value.size() != 1 )
                throw diagnostic( error_kind::syntax_error, value[ 1 ].pos, "expected a single value" );
            return value[ 0 ];
        };

        if ( section == "lattice" )
        {
            if ( k == "builtin" && key.size() == 1 )
                doc.lattice.builtin = value;
            else if ( k == "carrier" && key.size() == 1 )
                doc.lattice.carrier = value;
            else if ( k == "leq" && key.size() == 1 )
                doc.lattice.leq.push_back( detail::expect_pair( value, at, "'leq = a b'" ) );
            else if ( k == "star" && key.size() == 2 )
                doc.lattice.star_rows.emplace_back( key[ 1 ], value );
            else
                throw bad_key();
        }
        else if ( section == "group" )
        {
            if ( k == "builtin" && key.size() == 1 )
                doc.group.builtin = single();
            else if ( k == "elements" && key.size() == 1 )
                doc.group.elements = value;
            else if ( k == "row" && key.size() == 2 )
                doc.group.rows.emplace_back( key[ 1 ], value );
            else
                throw bad_key();
        }
        else if ( section == "filters" )
        {
            filter_decl d;
            if ( key.size() == 2 && k == "pair" )
            {
                d.pair = true;
                d.name = key[ 1 ];
            }
            else if ( key.size() == 1 )
                d.name = key[ 0 ];
            else
                throw bad_key();
            d.members = detail::split_groups( value, at );
            doc.filters.push_back( std::move( d ) );
        }
        else if ( section == "convergence" )
        {
            if ( k == "builtin" && key.size() == 1 )
                doc.convergence.builtin = single();
            else if ( k == "closure" && key.size() == 1 )
                doc.convergence.closure = single();
            else if ( k == "converges" && key.size() == 1 )
                doc.convergence.converges.push_back( detail::expect_pair( value, at, "'converges = FILTER POINT'" ) );
            else if ( k == "drop" && key.size() == 1 )
                doc.convergence.drop.push_back( detail::expect_pair( value, at, "'drop = FILTER POINT'" ) );
            else if ( k == "add" && key.size() == 1 )
                doc.convergence.add.push_back( detail::expect_pair( value, at, "'add = FILTER POINT'" ) );
            else
                throw bad_key();
        }
        else if ( section == "uniform" )
        {
            if ( k == "builtin" && key.size() == 1 )
                doc.uniform.builtin = single();
            else if ( k == "member" && key.size() == 1 )
                doc.uniform.members.push_back( single() );
            else if ( k == "upset" && key.size() == 1 )
                doc.uniform.upsets.push_back( single() );
            else
                throw bad_key();
        }
        else // suites
        {
            if ( k == "run" && key.size() == 1 )
                doc.suites.push_back( single() );
            else
                throw bad_key();
        }
    }
    return doc;
}

// Lattice and group named by the document, with the lattice built without
// validating the star (the lattice-axioms suite reports on it instead).
struct document_carriers
{
    std::shared_ptr<const residuated_lattice> lattice;
    std::shared_ptr<const finite_group> group;
};

inline std::shared_ptr<const residuated_lattice> resolve_lattice( const model_document& doc, bool validate )
{
    const auto& lb = doc.lattice;
    if ( !lb.present )
        throw diagnostic( error_kind::syntax_error, { 1, 1 }, "missing [lattice] section" );
    if ( !lb.builtin.empty() )
    {
        const auto& b = lb.builtin;
        if ( b[ 0 ].text == "chain" && b.size() == 3 )
        {
            chain_flavor fl;
            if ( b[ 2 ].text == "lukasiewicz" )
                fl = chain_flavor::lukasiewicz;
            else if ( b[ 2 ].text == "godel" )
                fl = chain_flavor::godel;
            else
                throw diagnostic( error_kind::unresolved_reference, b[ 2 ].pos, "unknown chain flavor '" + b[ 2 ].text + "'" );
            try
            {
                return std::make_shared<const residuated_lattice>( build_chain( detail::parse_count( b[ 1 ] ), fl ) );
            }
            catch ( const diagnostic& )
            {
                throw;
            }
            catch ( const error& e )
            {
                throw diagnostic( e.kind(), b[ 1 ].pos, e.what() );
            }
        }
        if ( b[ 0 ].text == "boolean" && b.size() == 2 )
        {
            try
            {
                return std::make_shared<const residuated_lattice>( build_boolean( detail::parse_count( b[ 1 ] ) ) );
            }
            catch ( const diagnostic& )
            {
                throw;
            }
            catch ( const error& e )
            {
                throw diagnostic( e.kind(), b[ 1 ].pos, e.what() );
            }
        }
        throw diagnostic( error_kind::syntax_error, b[ 0 ].pos,
                          "expected 'chain N lukasiewicz|godel' or 'boolean K'" );
    }
    if ( lb.carrier.empty() )
        throw diagnostic( error_kind::syntax_error, { 1, 1 }, "[lattice] needs 'builtin' or 'carrier'" );
    lattice_description d;
    auto find = [ & ]( const token& t ) -> lat {
        for ( std::size_t i = 0; i < lb.carrier.size(); ++i )
            if ( lb.carrier[ i ].text == t.text )
                return lat( i );
        throw diagnostic( error_kind::unresolved_reference, t.pos, "unknown lattice element '" + t.text + "'" );
    };
    for ( const auto& t : lb.carrier )
        d.carrier.push_back( t.text );
    for ( const auto& [ a, b ] : lb.leq )
        d.leq_pairs.emplace_back( find( a ), find( b ) );
    d.star_rows.assign( lb.carrier.size(), {} );
    std::vector<bool> seen( lb.carrier.size() );
    for ( const auto& [ row, vals ] : lb.star_rows )
    {
        const auto a = find( row );
        if ( vals.size() != lb.carrier.size() )
            throw diagnostic( error_kind::dimension_mismatch, row.pos,
                              "star row '" + row.text + "' has " + std::to_string( vals.size() ) + " entries, expected " +
                                      std::to_string( lb.carrier.size() ) );
        seen[ a ] = true;
        for ( const auto& v : vals )
            d.star_rows[ a ].push_back( find( v ) );
    }
    for ( std::size_t a = 0; a < seen.size(); ++a )
        if ( !seen[ a ] )
            throw diagnostic( error_kind::dimension_mismatch, lb.carrier[ a ].pos,
                              "no star row for '" + lb.carrier[ a ].text + "'" );
    try
    {
        return std::make_shared<const residuated_lattice>( validate ? build_from_tables( d ) : build_unchecked( d ) );
    }
    catch ( const diagnostic& )
    {
        throw;
    }
    catch ( const error& e )
    {
        throw diagnostic( e.kind(), lb.carrier.front().pos, e.what() );
    }
}

inline std::shared_ptr<const finite_group> resolve_group( const model_document& doc )
{
    const auto& gb = doc.group;
    if ( !gb.present )
        return nullptr;
    if ( !gb.builtin.text.empty() )
    {
        try
        {
            return std::make_shared<const finite_group>( builtin_group( gb.builtin.text ) );
        }
        catch ( const error& e )
        {
            throw diagnostic( e.kind(), gb.builtin.pos, e.what() );
        }
    }
    if ( gb.elements.empty() )
        throw diagnostic( error_kind::syntax_error, { 1, 1 }, "[group] needs 'builtin' or 'elements'" );
    const auto n = gb.elements.size();
    auto find = [ & ]( const token& t ) -> std::size_t {
        for ( std::size_t i = 0; i < n; ++i )
            if ( gb.elements[ i ].text == t.text )
                return i;
        throw diagnostic( error_kind::unresolved_reference, t.pos, "unknown group element '" + t.text + "'" );
    };
    std::vector<std::size_t> table( n * n, n );
    std::vector<bool> seen( n );
    std::vector<std::string> names;
    for ( const auto& t : gb.elements )
        names.push_back( t.text );
    for ( const auto& [ row, vals ] : gb.rows )
    {
        const auto a = find( row );
        if ( vals.size() != n )
            throw diagnostic( error_kind::dimension_mismatch, row.pos,
                              "group row '" + row.text + "' has " + std::to_string( vals.size() ) +
                                      " entries, expected " + std::to_string( n ) );
        seen[ a ] = true;
        for ( std::size_t b = 0; b < n; ++b )
            table[ a * n + b ] = find( vals[ b ] );
    }
    for ( std::size_t a = 0; a < n; ++a )
        if ( !seen[ a ] )
            throw diagnostic( error_kind::dimension_mismatch, gb.elements[ a ].pos,
                              "no group row for '" + names[ a ] + "'" );
    try
    {
        return std::make_shared<const finite_group>( std::move( names ), std::move( table ), "group" );
    }
    catch ( const error& e )
    {
        throw diagnostic( e.kind(), gb.elements.front().pos, e.what() );
    }
}

namespace detail
{

inline std::vector<fuzzy_set> resolve_members( const residuated_lattice& L, const filter_decl& d, std::size_t n )
{
    const auto expected = d.pair ? n * n : n;
    std::vector<fuzzy_set> out;
    for ( const auto& m : d.members )
    {
        if ( m.size() != expected )
            throw diagnostic( error_kind::dimension_mismatch, m.front().pos,
                              "filter '" + d.name.text + "' member has " + std::to_string( m.size() ) +
                                      " values, expected " + std::to_string( expected ) );
        fuzzy_set f( expected, L.bot() );
        for ( std::size_t i = 0; i < expected; ++i )
        {
            auto v = L.find( m[ i ].text );
            if ( !v )
                throw diagnostic( error_kind::unresolved_reference, m[ i ].pos,
                                  "unknown lattice element '" + m[ i ].text + "'" );
            f[ i ] = *v;
        }
        out.push_back( std::move( f ) );
    }
    return out;
}

} // namespace detail

// References and dimensions. Throws diagnostic on the first problem.
inline document_carriers check_document( const model_document& doc )
{
    document_carriers c;
    c.lattice = resolve_lattice( doc, false );
    c.group = resolve_group( doc );
    const std::size_t n = c.group ? c.group->size() : 0;

    std::map<std::string, const filter_decl*> names;
    for ( const auto& d : doc.filters )
    {
        if ( !c.group )
            throw diagnostic( error_kind::unresolved_reference, d.name.pos, "filters need a [group] carrier" );
        if ( !names.emplace( d.name.text, &d ).second )
            throw diagnostic( error_kind::syntax_error, d.name.pos, "filter '" + d.name.text + "' declared twice" );
        detail::resolve_members( *c.lattice, d, n );
    }
    auto filter_ref = [ & ]( const token& t, bool pair ) {
        auto it = names.find( t.text );
        if ( it == names.end() || it->second->pair != pair )
            throw diagnostic( error_kind::unresolved_reference, t.pos,
                              std::string( "undeclared " ) + ( pair ? "pair " : "" ) + "filter '" + t.text + "'" );
    };
    auto point_ref = [ & ]( const token& t ) {
        if ( !c.group->find( t.text ) )
            throw diagnostic( error_kind::unresolved_reference, t.pos, "unknown point '" + t.text + "'" );
    };

    const auto& cb = doc.convergence;
    if ( cb.present )
    {
        if ( !c.group )
            throw diagnostic( error_kind::unresolved_reference, { 1, 1 }, "[convergence] needs a [group] carrier" );
        const auto& b = cb.builtin.text;
        if ( !b.empty() && b != "discrete" && b != "indiscrete" )
            throw diagnostic( error_kind::unresolved_reference, cb.builtin.pos, "unknown structure '" + b + "'" );
        const auto& cl = cb.closure.text;
        if ( !cl.empty() && cl != "explicit" && cl != "upward" )
            throw diagnostic( error_kind::syntax_error, cb.closure.pos, "closure must be 'explicit' or 'upward'" );
        for ( const auto* list : { &cb.converges, &cb.drop, &cb.add } )
            for ( const auto& [ f, x ] : *list )
            {
                filter_ref( f, false );
                point_ref( x );
            }
    }
    const auto& ub = doc.uniform;
    if ( ub.present )
    {
        if ( !cb.present )
            throw diagnostic( error_kind::unresolved_reference, { 1, 1 }, "[uniform] needs a [convergence] block" );
        if ( !ub.builtin.text.empty() && ub.builtin.text != "from-group" )
            throw diagnostic( error_kind::unresolved_reference, ub.builtin.pos,
                              "unknown uniform structure '" + ub.builtin.text + "'" );
        for ( const auto* list : { &ub.members, &ub.upsets } )
            for ( const auto& t : *list )
                filter_ref( t, true );
    }
    for ( const auto& s : doc.suites )
        if ( std::find( suite_catalogue().begin(), suite_catalogue().end(), s.text ) == suite_catalogue().end() )
            throw diagnostic( error_kind::unresolved_reference, s.pos, "unknown suite '" + s.text + "'" );
    return c;
}

inline model_document parse_model( std::string_view text )
{
    auto doc = parse_syntax( text );
    check_document( doc );
    return doc;
}

inline std::string emit_model( const model_document& doc )
{
    std::string s;
    auto line = [ &s ]( const std::string& l ) { s += l + "\n"; };
    using detail::join_tokens;
    line( "[lattice]" );
    if ( !doc.lattice.builtin.empty() )
        line( "builtin = " + join_tokens( doc.lattice.builtin ) );
    else
    {
        line( "carrier = " + join_tokens( doc.lattice.carrier ) );
        for ( const auto& [ a, b ] : doc.lattice.leq )
            line( "leq = " + a.text + " " + b.text );
        for ( const auto& [ r, v ] : doc.lattice.star_rows )
            line( "star " + r.text + " = " + join_tokens( v ) );
    }
    if ( doc.group.present )
    {
        line( "\n[group]" );
        if ( !doc.group.builtin.text.empty() )
            line( "builtin = " + doc.group.builtin.text );
        else
        {
            line( "elements = " + join_tokens( doc.group.elements ) );
            for ( const auto& [ r, v ] : doc.group.rows )
                line( "row " + r.text + " = " + join_tokens( v ) );
        }
    }
    if ( !doc.filters.empty() )
    {
        line( "\n[filters]" );
        for ( const auto& d : doc.filters )
        {
            std::string v;
            for ( std::size_t i = 0; i < d.members.size(); ++i )
                v += ( i ? " ; " : "" ) + join_tokens( d.members[ i ] );
            line( ( d.pair ? "pair " : "" ) + d.name.text + " = " + v );
        }
    }
    if ( doc.convergence.present )
    {
        const auto& cb = doc.convergence;
        line( "\n[convergence]" );
        if ( !cb.builtin.text.empty() )
            line( "builtin = " + cb.builtin.text );
        if ( !cb.closure.text.empty() )
            line( "closure = " + cb.closure.text );
        for ( const auto& [ f, x ] : cb.converges )
            line( "converges = " + f.text + " " + x.text );
        for ( const auto& [ f, x ] : cb.drop )
            line( "drop = " + f.text + " " + x.text );
        for ( const auto& [ f, x ] : cb.add )
            line( "add = " + f.text + " " + x.text );
    }
    if ( doc.uniform.present )
    {
        line( "\n[uniform]" );
        if ( !doc.uniform.builtin.text.empty() )
            line( "builtin = " + doc.uniform.builtin.text );
        for ( const auto& t : doc.uniform.members )
            line( "member = " + t.text );
        for ( const auto& t : doc.uniform.upsets )
            line( "upset = " + t.text );
    }
    if ( !doc.suites.empty() )
    {
        line( "\n[suites]" );
        for ( const auto& t : doc.suites )
            line( "run = " + t.text );
    }
    return s;
}

// ---------------------------------------------------------------------------
// Building

struct built_model
{
    std::string name;
    std::shared_ptr<const residuated_lattice> raw_lattice; // star as written
    std::shared_ptr<const residuated_lattice> lattice;     // validated, or the raw tables when validation failed
    std::string lattice_error;                             // non-empty when validation failed
    std::shared_ptr<const finite_group> group;
    std::map<std::string, tfilter> filters;
    std::map<std::string, std::vector<fuzzy_set>> raw_bases;
    universe_ptr universe;
    std::shared_ptr<const convergence_structure> convergence;
    std::shared_ptr<const uniform_structure> uniform;
    std::vector<std::string> suites;
};

// Resolves the document into values. A lattice whose tables fail the
// residuated-lattice axioms is kept as written and the reason recorded.
inline built_model build_model( const model_document& doc, const budgets& limits, std::string name = "model" )
{
    auto carriers = check_document( doc );
    built_model m;
    m.name = std::move( name );
    m.raw_lattice = carriers.lattice;
    m.group = carriers.group;
    for ( const auto& s : doc.suites )
        m.suites.push_back( s.text );
    try
    {
        m.lattice = resolve_lattice( doc, true );
    }
    catch ( const error& e )
    {
        // keep going on the raw tables so the theorem suites can show the damage
        m.lattice_error = e.what();
        m.lattice = m.raw_lattice;
    }
    if ( !m.group )
        return m;
    const auto& L = *m.lattice;
    const auto n = m.group->size();

    std::vector<tfilter> seeds, pair_seeds;
    for ( const auto& d : doc.filters )
    {
        auto members = detail::resolve_members( L, d, n );
        try
        {
            auto F = generate( L, members );
            ( d.pair ? pair_seeds : seeds ).push_back( F );
            m.filters.emplace( d.name.text, std::move( F ) );
        }
        catch ( const error& e )
        {
            throw diagnostic( e.kind(), d.name.pos, "filter '" + d.name.text + "': " + e.what() );
        }
        m.raw_bases.emplace( d.name.text, std::move( members ) );
    }

    if ( fuzzy_space_within( L, n, limits.enumeration ) )
        m.universe = complete_universe( m.lattice, n, limits.enumeration );
    else
    {
        const auto& G = *m.group;
        auto unary = [ & ]( const tfilter& F, std::vector<tfilter>& out ) { out.push_back( inverse_filter( L, G, F ) ); };
        auto binary = [ & ]( const tfilter& F, const tfilter& H, std::vector<tfilter>& out ) {
            out.push_back( odot_filter( L, G, F, H ) );
            out.push_back( intersect_filter( L, F, H ) );
        };
        m.universe = close_universe( m.lattice, n, seeds, unary, binary, limits.closure_rounds, limits.enumeration ).first;
    }

    const auto& cb = doc.convergence;
    if ( !cb.present )
        return m;
    const auto& U = *m.universe;
    std::shared_ptr<convergence_structure> C;
    if ( cb.builtin.text == "discrete" )
        C = std::make_shared<convergence_structure>( discrete_structure( m.universe, m.group ) );
    else if ( cb.builtin.text == "indiscrete" )
        C = std::make_shared<convergence_structure>( indiscrete_structure( m.universe, m.group ) );
    else
        C = std::make_shared<convergence_structure>( m.universe, m.group );
    auto index = [ & ]( const token& f ) { return U.index_of( m.filters.at( f.text ) ); };
    auto point = [ & ]( const token& x ) { return *m.group->find( x.text ); };
    for ( const auto& [ f, x ] : cb.converges )
        C->set( index( f ), point( x ) );
    if ( cb.closure.text == "upward" )
        for ( std::size_t x = 0; x < n; ++x )
            for ( std::size_t f = 0; f < U.size(); ++f )
                if ( C->converges( f, x ) )
                    for ( std::size_t g = 0; g < U.size(); ++g )
                        if ( U.contained( f, g ) )
                            C->set( g, x );
    for ( const auto& [ f, x ] : cb.drop )
        C->set( index( f ), point( x ), false );
    for ( const auto& [ f, x ] : cb.add )
        C->set( index( f ), point( x ) );
    m.convergence = C;

    const auto& ub = doc.uniform;
    if ( !ub.present )
        return m;
    auto UXX = uniform_universe( *C, limits.enumeration, limits.closure_rounds, 4096, pair_seeds );
    if ( ub.builtin.text == "from-group" )
        m.uniform = std::make_shared<const uniform_structure>( phi_from_group( *C, UXX ) );
    else
    {
        auto P = std::make_shared<uniform_structure>( UXX, m.group );
        for ( const auto& t : ub.members )
            P->set( UXX->index_of( m.filters.at( t.text ) ) );
        for ( const auto& t : ub.upsets )
        {
            const auto f = UXX->index_of( m.filters.at( t.text ) );
            for ( std::size_t g = 0; g < UXX->size(); ++g )
                if ( UXX->contained( f, g ) )
                    P->set( g );
        }
        m.uniform = P;
    }
    return m;
}

} // namespace tconv
